#include "nqa/transform.hpp"

#include <cmath>

#include "nqa/errors.hpp"
#include "nqa/linreg.hpp"

namespace nqa {

SeriesSource explicit_series(std::vector<double> terms)
{
    SeriesSource s;
    s.kind = SeriesKind::ExplicitList;
    s.max_n_hint = (long long)terms.size();
    s.term = [t = std::move(terms)](long long n) {
        return (n >= 0 && n < (long long)t.size()) ? t[(std::size_t)n] : 0.0;
    };
    return s;
}

SeriesSource rule_series(std::function<double(long long)> term, long long max_n_hint)
{
    SeriesSource s;
    s.kind = SeriesKind::RuleBased;
    s.term = std::move(term);
    s.max_n_hint = max_n_hint;
    return s;
}

double n_mean_function(const Kernel& kernel, const std::function<double(double)>& F, double w)
{
    if (w <= 0)
        throw ParameterOutOfRange("n_mean_function: w must be > 0");
    QuadResult r = integrate([&](double t) { return kernel.q(t) * F(w * t); }, 0.0, 1.0);
    if (!r.converged)
        throw QuadratureFailure("n_mean_function: adaptive refinement exceeded budget");
    return r.value;
}

double n_mean_series(const Kernel& kernel, const SeriesSource& s, double w)
{
    if (w <= 0)
        throw ParameterOutOfRange("n_mean_series: w must be > 0");
    const long long N = (long long)std::floor(w);
    double sum = 0.0;
    for (long long n = 0; n <= N; ++n)
        sum += s.term(n) * kernel.Q(1.0 - double(n) / w);
    return sum;
}

double abs_integrand(const Kernel& kernel, const SeriesSource& s, double w)
{
    if (w <= 0)
        throw ParameterOutOfRange("abs_integrand: w must be > 0");
    const long long N = (long long)std::floor(w);
    double sum = 0.0;
    for (long long n = 1; n <= N; ++n)
        sum += double(n) * s.term(n) * kernel.q(double(n) / w);
    return std::fabs(sum) / (w * w);
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::ConvergentEvidence: return "ConvergentEvidence";
    case Verdict::DivergentEvidence: return "DivergentEvidence";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

SummabilityReport abs_summability_diagnostic(const Kernel& kernel, const SeriesSource& s,
                                             double A, double W_max, DiagnosticOptions opt)
{
    if (!(0 < A && A < W_max))
        throw ParameterOutOfRange("abs_summability_diagnostic: requires 0 < A < W_max");
    if (opt.points_per_dyad < 8)
        throw ParameterOutOfRange("abs_summability_diagnostic: points_per_dyad >= 8");

    SummabilityReport rep;
    long long evals = 0;
    double partial = 0.0;
    std::vector<double> increments;

    double lo = A;
    while (lo < W_max) {
        const double hi = std::min(2.0 * lo, W_max);
        const double h = (hi - lo) / opt.points_per_dyad;
        double inc = 0.0;
        for (int m = 0; m < opt.points_per_dyad; ++m) {
            // nodes nudged off integer w, where the sum gains a term
            const double w = lo + (m + 0.5) * h + 1e-9;
            evals += (long long)w + 1;
            if (evals > opt.term_eval_budget)
                throw BudgetExceeded("abs_summability_diagnostic: term evaluation budget exceeded");
            inc += abs_integrand(kernel, s, w);
        }
        inc *= h;
        partial += inc;
        increments.push_back(inc);
        rep.abs_partials.emplace_back(hi, partial, inc);
        rep.means.emplace_back(hi, n_mean_series(kernel, s, hi));
        lo = hi;
    }
    rep.total = partial;

    auto fit_range = [&](std::size_t from) {
        std::vector<double> ix, ly;
        for (std::size_t j = from; j < increments.size(); ++j) {
            if (increments[j] <= 0) continue;
            ix.push_back(double(j));
            ly.push_back(std::log(increments[j]));
        }
        return fit_line(ix, ly);
    };
    const std::size_t nl = std::min<std::size_t>(4, increments.size());
    rep.slope = fit_range(0).slope;
    rep.slope_last4 = fit_range(increments.size() - nl).slope;

    if (rep.total == 0.0) {
        rep.verdict = Verdict::ConvergentEvidence;
    } else if (rep.slope < -0.1 && increments.back() < 1e-3 * rep.total) {
        rep.verdict = Verdict::ConvergentEvidence;
    } else if (rep.slope_last4 >= 0.0) {
        rep.verdict = Verdict::DivergentEvidence;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

} // namespace nqa
