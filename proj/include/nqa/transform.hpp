#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nqa/kernel.hpp"

namespace nqa {

enum class SeriesKind { ExplicitList, RuleBased, DerivedConjugate };

struct SeriesSource {
    SeriesKind kind = SeriesKind::RuleBased;
    std::function<double(long long)> term; // u_n, n >= 0
    long long max_n_hint = 0;
};

SeriesSource explicit_series(std::vector<double> terms);
SeriesSource rule_series(std::function<double(long long)> term, long long max_n_hint = 0);

// N-transform of a function of a continuous parameter:
// int_0^1 q(t) F(wt) dt.
double n_mean_function(const Kernel& kernel, const std::function<double(double)>& F, double w);

// Series mean: sum_{n <= floor(w)} u_n Q(1 - n/w).
double n_mean_series(const Kernel& kernel, const SeriesSource& s, double w);

// (1/w^2) |sum_{n <= floor(w)} n u_n q(n/w)|
double abs_integrand(const Kernel& kernel, const SeriesSource& s, double w);

enum class Verdict { ConvergentEvidence, DivergentEvidence, Inconclusive };

std::string to_string(Verdict v);

struct SummabilityReport {
    std::vector<std::pair<double, double>> means;                   // (w, mean)
    std::vector<std::tuple<double, double, double>> abs_partials;   // (W, partial, increment)
    double slope = 0.0;       // fitted log(increment) vs dyad index
    double slope_last4 = 0.0;
    double total = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct DiagnosticOptions {
    int points_per_dyad = 32;
    long long term_eval_budget = 2'000'000'000;
};

// Partial integrals of the absolute-summability integrand over [A, W] at
// dyadic checkpoints W = A*2^j up to W_max, with a decay-slope verdict.
SummabilityReport abs_summability_diagnostic(const Kernel& kernel, const SeriesSource& s,
                                             double A, double W_max,
                                             DiagnosticOptions opt = {});

} // namespace nqa
