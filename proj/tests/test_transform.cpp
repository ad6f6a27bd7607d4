#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nqa/errors.hpp"
#include "nqa/transform.hpp"

using namespace nqa;

TEST_CASE("explicit series returns zero outside its range")
{
    SeriesSource s = explicit_series({1.0, -2.0, 3.0});
    CHECK(s.term(0) == 1.0);
    CHECK(s.term(2) == 3.0);
    CHECK(s.term(3) == 0.0);
    CHECK(s.term(-1) == 0.0);
}

TEST_CASE("function mean: linear integrand against the flat kernel")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0); // q = 1
    const double v = n_mean_function(kn, [](double x) { return x; }, 10.0);
    CHECK(v == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("function mean: quadratic integrand, curved kernel")
{
    Kernel kn = Kernel::cesaro(1.0, 0.5); // q = 1.5 (1-t)^{1/2}
    // int_0^1 1.5 (1-t)^{1/2} t^2 dt = 1.5 * B(3, 3/2) = 8/35
    const double v = n_mean_function(kn, [](double x) { return x * x; }, 1.0);
    CHECK(v == doctest::Approx(8.0 / 35.0).epsilon(1e-9));
}

TEST_CASE("function mean rejects nonpositive w")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    CHECK_THROWS_AS(n_mean_function(kn, [](double x) { return x; }, 0.0),
                    ParameterOutOfRange);
}

TEST_CASE("series mean: single-term series sees Q(1) = 1")
{
    Kernel kn = Kernel::cesaro(2.5, 0.4);
    SeriesSource s = explicit_series({1.0});
    CHECK(n_mean_series(kn, s, 10.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("series mean: alternating series is exactly 1/2 at even w")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long n) { return (n % 2) ? -1.0 : 1.0; });
    for (double w : {10.0, 100.0, 1000.0})
        CHECK(std::fabs(n_mean_series(kn, s, w) - 0.5) <= 1e-12);
}

TEST_CASE("series mean: geometric series approaches 2")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long n) { return std::pow(2.0, -double(n)); });
    CHECK(std::fabs(n_mean_series(kn, s, 4096.0) - 2.0) <= 5e-3);
}

TEST_CASE("absolute-summability integrand: frozen hand value")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long n) { return (n % 2) ? -1.0 : 1.0; });
    // |(-1 + 2 - 3 + 4)| / 16
    CHECK(abs_integrand(kn, s, 4.0) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("diagnostic: degenerate series has exactly zero total integral")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = explicit_series({1.0});
    SummabilityReport rep = abs_summability_diagnostic(kn, s, 1.0, 256.0);
    CHECK(rep.total == 0.0);
    CHECK(rep.verdict == Verdict::ConvergentEvidence);
}

TEST_CASE("diagnostic: geometric series converges")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long n) { return std::pow(2.0, -double(n)); });
    SummabilityReport rep = abs_summability_diagnostic(kn, s, 1.0, 2048.0);
    CHECK(rep.verdict == Verdict::ConvergentEvidence);
    CHECK(rep.slope < -0.1);
}

TEST_CASE("diagnostic: alternating series shows constant dyadic increments")
{
    // The partial integrals grow by ln(2)/2 per dyad: evidence of divergence.
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long n) { return (n % 2) ? -1.0 : 1.0; });
    SummabilityReport rep = abs_summability_diagnostic(kn, s, 1.0, 4096.0);
    const auto& [W, partial, inc] = rep.abs_partials.back();
    CHECK(inc == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-3));
    CHECK(rep.slope_last4 >= 0.0);
    CHECK(rep.verdict == Verdict::DivergentEvidence);
}

TEST_CASE("diagnostic enforces its evaluation budget")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = rule_series([](long long) { return 1.0; });
    DiagnosticOptions opt;
    opt.term_eval_budget = 100;
    CHECK_THROWS_AS(abs_summability_diagnostic(kn, s, 1.0, 4096.0, opt), BudgetExceeded);
}

TEST_CASE("diagnostic validates its schedule")
{
    Kernel kn = Kernel::cesaro(0.0, 1.0);
    SeriesSource s = explicit_series({1.0});
    CHECK_THROWS_AS(abs_summability_diagnostic(kn, s, 0.0, 10.0), ParameterOutOfRange);
    CHECK_THROWS_AS(abs_summability_diagnostic(kn, s, 16.0, 8.0), ParameterOutOfRange);
}
