#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nqa/errors.hpp"
#include "nqa/experiment.hpp"

using namespace nqa;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& body)
{
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_diag(const std::vector<std::string>& diags, const std::string& needle)
{
    return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) {
        return d.find(needle) != std::string::npos;
    });
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("config loading: missing file and malformed JSON")
{
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), ConfigInvalid);
    const std::string p = write_temp("nqa_bad.json", "{ not json");
    CHECK_THROWS_AS(load_config(p), ConfigInvalid);
}

TEST_CASE("config loading: nested kernel block and defaults")
{
    const std::string p = write_temp("nqa_ok.json", R"({
        "command": "kernel-check",
        "kernel": {"alpha": 2.5, "delta": 0.4}
    })");
    ExperimentConfig cfg = load_config(p);
    CHECK(cfg.command == "kernel-check");
    CHECK(cfg.alpha == 2.5);
    CHECK(cfg.delta == 0.4);
    CHECK(cfg.tolerance < 0.0); // default sentinel
    CHECK(validate(cfg).empty());
}

TEST_CASE("validation diagnostics name the offending field")
{
    ExperimentConfig cfg;
    cfg.command = "kernel-check";
    cfg.alpha = -1.0;
    CHECK(has_diag(validate(cfg), "alpha must be >= 0"));

    cfg = {};
    cfg.command = "frobnicate";
    CHECK(!validate(cfg).empty());

    cfg = {};
    cfg.command = "fourier-experiment";
    cfg.function = "cos";
    cfg.alpha = 2.5;
    cfg.delta = 0.4;
    cfg.r = 3; // r >= alpha
    CHECK(has_diag(validate(cfg), "requires r < alpha"));

    cfg.r = 1;
    cfg.function = "unknownfn";
    CHECK(has_diag(validate(cfg), "unresolved"));

    cfg = {};
    cfg.command = "abs-diagnostic";
    cfg.series = "no-such-series";
    CHECK(has_diag(validate(cfg), "unresolved"));

    cfg = {};
    cfg.command = "lemma-verify";
    cfg.alpha = 2.5;
    cfg.delta = 0.4;
    cfg.lemma = 7;
    CHECK(!validate(cfg).empty());
    cfg.lemma = 10;
    CHECK(validate(cfg).empty());
}

TEST_CASE("kernel-check run writes its artifact and passes all conditions")
{
    const fs::path out = fresh_dir("nqa_cli_kc");
    ExperimentConfig cfg;
    cfg.command = "kernel-check";
    cfg.alpha = 0.0;
    cfg.delta = 1.0;
    cfg.out_dir = out.string();
    RunManifest m = run(cfg);
    CHECK(m.exit_code == 0);
    CHECK(!m.checks.empty());
    for (const auto& [name, ok] : m.checks) {
        INFO(name);
        CHECK(ok);
    }
    CHECK(fs::exists(out / "kernel_check.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    const std::string csv = slurp(out / "kernel_check.csv");
    CHECK(csv.find("condition") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos); // plain LF line endings
}

TEST_CASE("mean run reports the summed transform values")
{
    const fs::path out = fresh_dir("nqa_cli_mean");
    ExperimentConfig cfg;
    cfg.command = "mean";
    cfg.alpha = 0.0;
    cfg.delta = 1.0;
    cfg.series = "alternating";
    cfg.w_values = {10.0, 100.0};
    cfg.out_dir = out.string();
    RunManifest m = run(cfg);
    CHECK(m.exit_code == 0);
    const std::string csv = slurp(out / "means.csv");
    CHECK(csv.find("0.5") != std::string::npos);
}

TEST_CASE("runs are deterministic: identical artifacts for identical configs")
{
    ExperimentConfig cfg;
    cfg.command = "abs-diagnostic";
    cfg.alpha = 0.0;
    cfg.delta = 1.0;
    cfg.series = "geometric";
    cfg.A = 1.0;
    cfg.W_max = 512.0;
    cfg.seed = 42;
    cfg.jitter = true;

    const fs::path o1 = fresh_dir("nqa_cli_det1");
    const fs::path o2 = fresh_dir("nqa_cli_det2");
    cfg.out_dir = o1.string();
    RunManifest m1 = run(cfg);
    cfg.out_dir = o2.string();
    RunManifest m2 = run(cfg);
    CHECK(m1.exit_code == m2.exit_code);
    CHECK(slurp(o1 / "abs_diagnostic.csv") == slurp(o2 / "abs_diagnostic.csv"));
}

TEST_CASE("different jitter seeds move the sampled grid")
{
    ExperimentConfig cfg;
    cfg.command = "kernel-check";
    cfg.alpha = 1.0;
    cfg.delta = 0.5;
    cfg.jitter = true;

    const fs::path o1 = fresh_dir("nqa_cli_seed1");
    const fs::path o2 = fresh_dir("nqa_cli_seed2");
    cfg.seed = 1;
    cfg.out_dir = o1.string();
    RunManifest m1 = run(cfg);
    cfg.seed = 2;
    cfg.out_dir = o2.string();
    RunManifest m2 = run(cfg);
    CHECK(m1.exit_code == 0);
    CHECK(m2.exit_code == 0); // conclusions stable under the perturbation
    CHECK(slurp(o1 / "kernel_check.csv") != slurp(o2 / "kernel_check.csv"));
}

TEST_CASE("the known divergent case exits with a failed check, not a crash")
{
    const fs::path out = fresh_dir("nqa_cli_div");
    ExperimentConfig cfg;
    cfg.command = "abs-diagnostic";
    cfg.alpha = 0.0;
    cfg.delta = 1.0;
    cfg.series = "alternating";
    cfg.W_max = 2048.0;
    cfg.out_dir = out.string();
    RunManifest m = run(cfg);
    CHECK(m.exit_code == 1);
    bool saw_verdict = false;
    for (const auto& [name, ok] : m.checks)
        if (name.find("verdict") != std::string::npos) {
            saw_verdict = true;
            CHECK(!ok);
        }
    CHECK(saw_verdict);
}

TEST_CASE("manifest records command, version and artifact list")
{
    const fs::path out = fresh_dir("nqa_cli_manifest");
    ExperimentConfig cfg;
    cfg.command = "kernel-check";
    cfg.alpha = 1.0;
    cfg.delta = 0.5;
    cfg.out_dir = out.string();
    RunManifest m = run(cfg);
    CHECK(m.command == "kernel-check");
    CHECK(m.tool_version == tool_version());
    CHECK(!m.artifacts.empty());
    const std::string j = slurp(out / "manifest.json");
    CHECK(j.find("\"command\"") != std::string::npos);
    CHECK(j.find("kernel_check.csv") != std::string::npos);
}
