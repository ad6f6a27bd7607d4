#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nqa/errors.hpp"
#include "nqa/experiment.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"nqa-lab: summability kernels, transforms and bound checks"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double tolerance = -1.0;
    unsigned seed = 0;
    bool seed_set = false, out_set = false, tol_set = false;

    for (const char* name : {"kernel-check", "mean", "abs-diagnostic",
                             "fourier-experiment", "lemma-verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--out", out_dir, "output directory override")
            ->each([&](const std::string&) { out_set = true; });
        sub->add_option("--tolerance", tolerance, "tolerance override")
            ->each([&](const std::string&) { tol_set = true; });
        sub->add_option("--seed", seed, "grid-jitter seed override")
            ->each([&](const std::string&) { seed_set = true; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        nqa::ExperimentConfig cfg = nqa::load_config(config_path);
        cfg.command = app.get_subcommands()[0]->get_name();
        if (out_set) cfg.out_dir = out_dir;
        if (tol_set) cfg.tolerance = tolerance;
        if (seed_set) cfg.seed = seed;

        const auto diags = nqa::validate(cfg);
        if (!diags.empty()) {
            for (const auto& d : diags) std::fprintf(stderr, "config: %s\n", d.c_str());
            return 2;
        }

        nqa::RunManifest man = nqa::run(cfg);
        for (const auto& [name, pass] : man.checks)
            std::printf("%-40s %s\n", name.c_str(), pass ? "pass" : "FAIL");
        std::printf("exit=%d wall=%.2fs artifacts=%zu\n", man.exit_code, man.wall_seconds,
                    man.artifacts.size());
        return man.exit_code;
    } catch (const nqa::ConfigInvalid& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
