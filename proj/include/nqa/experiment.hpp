#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nqa {

struct ExperimentConfig {
    std::string command; // kernel-check | mean | abs-diagnostic | fourier-experiment | lemma-verify

    // kernel
    double alpha = 0.0;
    double delta = 1.0;

    // series / function reference
    std::string series;   // alternating | one-zero | geometric | alternating-n | inverse-square
    std::string function; // sin | cos | sawtooth | square | abs
    int r = 1;
    double x = 0.0;
    int fourier_N = 16;
    int theorem = 1;

    // schedule
    double A = 1.0;
    double W_max = 4096.0;
    int points_per_dyad = 32;
    std::vector<double> w_values;

    int lemma = 0;
    double tolerance = -1.0; // < 0: per-command default
    std::string out_dir = ".";
    unsigned seed = 0;
    bool jitter = false; // seeded <=1% grid perturbation
};

// Parse a JSON config file. Throws ConfigInvalid on I/O or shape errors.
ExperimentConfig load_config(const std::string& path);

// Structural/range validation; returns diagnostics instead of throwing.
std::vector<std::string> validate(const ExperimentConfig& cfg);

struct RunManifest {
    std::string command;
    std::string tool_version;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> artifacts; // CSV files written
    int exit_code = 0;                  // 0 ok, 1 check failed, 3 numerical failure
};

// Dispatch the configured experiment, write CSV artifacts into cfg.out_dir,
// and return the manifest (also written as manifest.json). Deterministic for
// a fixed config and seed.
RunManifest run(const ExperimentConfig& cfg);

inline const char* tool_version() { return "0.1.0"; }

} // namespace nqa
