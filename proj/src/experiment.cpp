#include "nqa/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nqa/csv.hpp"
#include "nqa/errors.hpp"
#include "nqa/estimates.hpp"
#include "nqa/fourier.hpp"
#include "nqa/kernel.hpp"
#include "nqa/transform.hpp"

namespace nqa {

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"kernel-check", "mean", "abs-diagnostic",
                                         "fourier-experiment", "lemma-verify"};
const std::set<std::string> kSeries = {"alternating", "one-zero", "geometric",
                                       "alternating-n", "inverse-square"};
const std::set<std::string> kFunctions = {"sin", "cos", "sawtooth", "square", "abs"};
const std::set<int> kLemmas = {5, 6, 8, 10, 18};

SeriesSource series_by_name(const std::string& name)
{
    if (name == "alternating")
        return rule_series([](long long n) { return (n % 2) ? -1.0 : 1.0; });
    if (name == "one-zero") return explicit_series({1.0});
    if (name == "geometric")
        return rule_series([](long long n) { return std::pow(2.0, -double(n)); });
    if (name == "alternating-n")
        return rule_series([](long long n) { return ((n % 2) ? -1.0 : 1.0) * double(n); });
    if (name == "inverse-square")
        return rule_series([](long long n) { return n >= 1 ? 1.0 / double(n * n) : 0.0; });
    throw ConfigInvalid("unresolved series reference: " + name);
}

std::vector<double> maybe_jitter(std::vector<double> grid, const ExperimentConfig& cfg,
                                 std::mt19937& rng)
{
    if (!cfg.jitter) return grid;
    std::uniform_real_distribution<double> d(-0.01, 0.01);
    for (double& g : grid) g *= 1.0 + d(rng);
    return grid;
}

int env_threads()
{
    const char* v = std::getenv("NQA_THREADS");
    if (!v) return 1;
    const int n = std::atoi(v);
    return n > 0 ? n : 1;
}

struct Artifact {
    std::ofstream file;
    CsvWriter csv;
    explicit Artifact(const std::string& path) : file(path, std::ios::binary), csv(file)
    {
        if (!file) throw ConfigInvalid("cannot open output file: " + path);
    }
};

std::string out_path(const ExperimentConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

using S = std::string;
S num(double v) { return CsvWriter::num(v); }
S num(int v) { return CsvWriter::num(v); }

void run_kernel_check(const ExperimentConfig& cfg, RunManifest& man)
{
    Kernel kn = Kernel::cesaro(cfg.alpha, cfg.delta);
    const double tol = cfg.tolerance > 0 ? cfg.tolerance : 1e-7;
    std::mt19937 rng(cfg.seed);
    AdmissibilityReport rep =
        check_admissibility(kn, maybe_jitter(default_admissibility_grid(), cfg, rng), tol);

    const std::string path = out_path(cfg, "kernel_check.csv");
    Artifact a(path);
    a.csv.row({"condition", "pass", "witness_t", "value", "note"});
    for (const auto& c : rep.conditions) {
        a.csv.row({num(c.id), c.pass ? "1" : "0", num(c.witness_t), num(c.value), c.note});
        man.checks.emplace_back("condition-" + std::to_string(c.id), c.pass);
    }
    man.artifacts.push_back(path);
}

void run_mean(const ExperimentConfig& cfg, RunManifest& man)
{
    Kernel kn = Kernel::cesaro(cfg.alpha, cfg.delta);
    SeriesSource s = series_by_name(cfg.series);
    std::vector<double> ws = cfg.w_values;
    if (ws.empty())
        for (double w = cfg.A; w <= cfg.W_max; w *= 2) ws.push_back(w);

    const std::string path = out_path(cfg, "means.csv");
    Artifact a(path);
    a.csv.row({"w", "mean"});
    for (double w : ws) a.csv.row({num(w), num(n_mean_series(kn, s, w))});
    man.artifacts.push_back(path);
    man.checks.emplace_back("means-computed", true);
}

void run_abs_diagnostic(const ExperimentConfig& cfg, RunManifest& man)
{
    Kernel kn = Kernel::cesaro(cfg.alpha, cfg.delta);
    SeriesSource s = series_by_name(cfg.series);
    DiagnosticOptions opt;
    opt.points_per_dyad = cfg.points_per_dyad;
    SummabilityReport rep = abs_summability_diagnostic(kn, s, cfg.A, cfg.W_max, opt);

    const std::string path = out_path(cfg, "abs_diagnostic.csv");
    Artifact a(path);
    a.csv.row({"W", "partial", "increment", "mean"});
    for (std::size_t i = 0; i < rep.abs_partials.size(); ++i) {
        const auto& [W, partial, inc] = rep.abs_partials[i];
        a.csv.row({num(W), num(partial), num(inc), num(rep.means[i].second)});
    }
    a.csv.row({"# verdict", to_string(rep.verdict), "slope", num(rep.slope)});
    man.artifacts.push_back(path);
    man.checks.emplace_back("verdict-convergent", rep.verdict == Verdict::ConvergentEvidence);
}

void run_fourier(const ExperimentConfig& cfg, RunManifest& man)
{
    PeriodicFunction f = named_function(cfg.function);
    DerivedSeriesSpec spec = make_derived_spec(f, cfg.x, cfg.r, cfg.alpha);
    std::mt19937 rng(cfg.seed);
    const std::vector<double> grid = maybe_jitter(default_t_grid(), cfg, rng);
    HypothesisReport rep = cfg.theorem == 2
                               ? check_theorem2(f, spec, grid, default_eps_list())
                               : check_theorem1(f, spec, grid, default_eps_list());

    const std::string path = out_path(cfg, "fourier_experiment.csv");
    Artifact a(path);
    a.csv.row({"eps", "partial"});
    for (const auto& [eps, p] : rep.partials) a.csv.row({num(eps), num(p)});
    a.csv.row({"# verdict", to_string(rep.verdict), "limit", num(rep.limit_at_zero)});
    man.artifacts.push_back(path);
    if (cfg.theorem == 1) man.checks.emplace_back("limit-at-zero", rep.limit_ok);
    man.checks.emplace_back("variation-finite", rep.integral_finite);
    man.checks.emplace_back("hypotheses-hold", rep.verdict == HypothesisVerdict::Holds);
}

void report_rows(Artifact& a, RunManifest& man, const BoundFitReport& rep,
                 const std::string& tag)
{
    for (const auto& e : rep.exponents)
        a.csv.row({tag, e.label, num(e.fitted), num(e.predicted), num(e.r2),
                   e.pass ? "1" : "0"});
    for (const auto& [label, c] : rep.constants)
        a.csv.row({tag, label, num(c), "", "", ""});
    man.checks.emplace_back(tag, rep.pass);
}

void run_lemma_verify(const ExperimentConfig& cfg, RunManifest& man)
{
    Kernel kn = Kernel::cesaro(cfg.alpha, cfg.delta);
    const int k = kn.k();
    std::mt19937 rng(cfg.seed);

    if (cfg.lemma == 10) {
        const double tol = cfg.tolerance > 0 ? cfg.tolerance : 1e-6;
        const int m = std::min(k - cfg.r, cfg.r);
        std::vector<double> ws = maybe_jitter({5.0, 12.5, 30.0}, cfg, rng);
        std::vector<double> us = maybe_jitter({0.3, 1.0, 3.0}, cfg, rng);
        const std::string path = out_path(cfg, "lemma10.csv");
        Artifact a(path);
        a.csv.row({"i", "w", "u", "direct", "representation", "rel_err"});
        double worst = 0.0;
        for (int i = 0; i <= m; ++i)
            for (double w : ws)
                for (double u : us) {
                    const double d = G_direct(kn, cfg.r, i, w, u);
                    const double v = G_via_representation(kn, cfg.r, i, w, u);
                    const double rel = std::fabs(v - d) / std::max(std::fabs(d), 1e-30);
                    worst = std::max(worst, rel);
                    a.csv.row({num(i), num(w), num(u), num(d), num(v), num(rel)});
                }
        man.artifacts.push_back(path);
        man.checks.emplace_back("lemma10-max-rel-err", worst <= tol);
        return;
    }

    if (cfg.lemma == 5) {
        const std::string path = out_path(cfg, "lemma5.csv");
        Artifact a(path);
        a.csv.row({"cell", "fit", "fitted", "predicted", "r2", "pass"});
        const int threads = env_threads();
        std::vector<std::pair<std::string, std::future<BoundFitReport>>> cells;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) {
                std::ostringstream os;
                os << "lemma5-(" << i << "," << j << ")";
                auto work = [i, j] { return check_lemma5(default_lemma5_grid(i, j)); };
                cells.emplace_back(os.str(),
                                   std::async(threads > 1 ? std::launch::async
                                                          : std::launch::deferred,
                                              work));
            }
        for (auto& [tag, fut] : cells) report_rows(a, man, fut.get(), tag);
        man.artifacts.push_back(path);
        return;
    }

    if (cfg.lemma == 6) {
        const std::vector<double> lambda = {1.0, 2.0, 3.0};
        const std::vector<double> coeff = {2.0, -1.0, 4.0};
        const double d1 = check_lemma6_identity(lambda, coeff, 1, 2.5, 1e-4);
        const double d2 = check_lemma6_identity(lambda, coeff, 2, 2.5, 1e-3);
        const std::string path = out_path(cfg, "lemma6.csv");
        Artifact a(path);
        a.csv.row({"k", "deviation", "tolerance", "pass"});
        a.csv.row({num(1), num(d1), num(1e-6), d1 <= 1e-6 ? "1" : "0"});
        a.csv.row({num(2), num(d2), num(1e-4), d2 <= 1e-4 ? "1" : "0"});
        man.artifacts.push_back(path);
        man.checks.emplace_back("lemma6-k1", d1 <= 1e-6);
        man.checks.emplace_back("lemma6-k2", d2 <= 1e-4);
        return;
    }

    if (cfg.lemma == 8) {
        const std::string path = out_path(cfg, "lemma8.csv");
        Artifact a(path);
        a.csv.row({"cell", "fit", "fitted", "predicted", "r2", "pass"});
        for (int p = 0; p <= k - 1; ++p)
            report_rows(a, man, check_lemma8_saturation(kn, p),
                        "lemma8-p" + std::to_string(p));
        man.artifacts.push_back(path);
        return;
    }

    // 18: the composite decay group (lemmas 11, 12, 18, 19, 20)
    const std::string path = out_path(cfg, "decay_lemmas.csv");
    Artifact a(path);
    a.csv.row({"cell", "fit", "fitted", "predicted", "r2", "pass"});
    for (const auto& rep : check_decay_lemmas(kn, cfg.r))
        report_rows(a, man, rep, "lemma" + std::to_string(rep.lemma));
    man.artifacts.push_back(path);
}

} // namespace

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigInvalid("config root must be an object");

    ExperimentConfig cfg;
    try {
        cfg.command = j.value("command", "");
        if (j.contains("kernel")) {
            cfg.alpha = j["kernel"].value("alpha", 0.0);
            cfg.delta = j["kernel"].value("delta", 1.0);
        }
        cfg.series = j.value("series", "");
        cfg.function = j.value("function", "");
        cfg.r = j.value("r", 1);
        cfg.x = j.value("x", 0.0);
        cfg.fourier_N = j.value("N", 16);
        cfg.theorem = j.value("theorem", 1);
        cfg.A = j.value("A", 1.0);
        cfg.W_max = j.value("W_max", 4096.0);
        cfg.points_per_dyad = j.value("points_per_dyad", 32);
        if (j.contains("w_values"))
            cfg.w_values = j["w_values"].get<std::vector<double>>();
        cfg.lemma = j.value("lemma", 0);
        cfg.tolerance = j.value("tolerance", -1.0);
        cfg.out_dir = j.value("out", ".");
        cfg.seed = j.value("seed", 0u);
        cfg.jitter = j.value("jitter", false);
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config field error: ") + e.what());
    }
    return cfg;
}

std::vector<std::string> validate(const ExperimentConfig& cfg)
{
    std::vector<std::string> diags;
    if (!kCommands.count(cfg.command))
        diags.push_back("unknown command: '" + cfg.command + "'");
    if (cfg.alpha < 0) diags.push_back("alpha must be >= 0");
    if (cfg.delta <= 0) diags.push_back("delta must be > 0");
    if (cfg.alpha >= 0 && cfg.delta > 0 &&
        cfg.alpha + cfg.delta > std::floor(cfg.alpha) + 1)
        diags.push_back("requires alpha + delta <= floor(alpha) + 1");

    if (cfg.command == "mean" || cfg.command == "abs-diagnostic") {
        if (!kSeries.count(cfg.series))
            diags.push_back("unresolved series reference: '" + cfg.series + "'");
        if (!(cfg.A > 0)) diags.push_back("A must be > 0");
        if (!(cfg.W_max > cfg.A)) diags.push_back("W_max must exceed A");
        if (cfg.points_per_dyad < 8) diags.push_back("points_per_dyad must be >= 8");
    }
    if (cfg.command == "fourier-experiment") {
        if (!kFunctions.count(cfg.function))
            diags.push_back("unresolved function reference: '" + cfg.function + "'");
        if (cfg.r < 1) diags.push_back("r must be >= 1");
        if (!(cfg.r < cfg.alpha)) diags.push_back("requires r < alpha");
        if (cfg.theorem != 1 && cfg.theorem != 2)
            diags.push_back("theorem must be 1 or 2");
        if (cfg.theorem == 2 && cfg.alpha - cfg.r - 1 < 0)
            diags.push_back("theorem 2 requires alpha - r - 1 >= 0");
    }
    if (cfg.command == "lemma-verify") {
        if (!kLemmas.count(cfg.lemma))
            diags.push_back("lemma must be one of 5, 6, 8, 10, 18");
        if ((cfg.lemma == 10 || cfg.lemma == 18) && !(cfg.r < cfg.alpha))
            diags.push_back("requires r < alpha");
        if ((cfg.lemma == 10 || cfg.lemma == 18) &&
            std::min(int(std::floor(cfg.alpha)) - cfg.r, cfg.r) < 0)
            diags.push_back("requires r <= floor(alpha)");
    }
    return diags;
}

RunManifest run(const ExperimentConfig& cfg)
{
    {
        const auto diags = validate(cfg);
        if (!diags.empty()) {
            std::string msg = "invalid config:";
            for (const auto& d : diags) msg += " " + d + ";";
            throw ConfigInvalid(msg);
        }
    }

    RunManifest man;
    man.command = cfg.command;
    man.tool_version = tool_version();
    const auto t0 = std::chrono::steady_clock::now();

    try {
        if (cfg.command == "kernel-check") run_kernel_check(cfg, man);
        else if (cfg.command == "mean") run_mean(cfg, man);
        else if (cfg.command == "abs-diagnostic") run_abs_diagnostic(cfg, man);
        else if (cfg.command == "fourier-experiment") run_fourier(cfg, man);
        else run_lemma_verify(cfg, man);
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception& e) {
        man.checks.emplace_back(std::string("numerical-failure: ") + e.what(), false);
        man.exit_code = 3;
    }

    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (man.exit_code == 0)
        for (const auto& [name, pass] : man.checks)
            if (!pass) man.exit_code = 1;

    json j;
    j["command"] = man.command;
    j["tool_version"] = man.tool_version;
    j["wall_seconds"] = man.wall_seconds;
    j["exit_code"] = man.exit_code;
    j["artifacts"] = man.artifacts;
    json checks = json::array();
    for (const auto& [name, pass] : man.checks)
        checks.push_back({{"name", name}, {"pass", pass}});
    j["checks"] = checks;
    j["config"] = {{"command", cfg.command},
                   {"kernel", {{"alpha", cfg.alpha}, {"delta", cfg.delta}}},
                   {"series", cfg.series},
                   {"function", cfg.function},
                   {"r", cfg.r},
                   {"lemma", cfg.lemma},
                   {"seed", cfg.seed},
                   {"jitter", cfg.jitter}};
    std::ofstream mf(out_path(cfg, "manifest.json"), std::ios::binary);
    mf << j.dump(2) << "\n";

    return man;
}

} // namespace nqa
