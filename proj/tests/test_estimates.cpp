#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nqa/errors.hpp"
#include "nqa/estimates.hpp"

using namespace nqa;

namespace {
constexpr double kPi = std::numbers::pi;

// Straightforward reference loop, kept deliberately naive. The n = 0 term is
// included with the convention 0^0 = 1.
double S_naive(int i, int j, double x, double u)
{
    double acc = 0.0;
    for (int n = 0; n <= int(std::floor(x)); ++n) {
        const double npow = (j == 0) ? 1.0 : std::pow(double(n), j);
        acc += std::pow(x - n, i) * npow * std::cos(n * u + j * kPi / 2);
    }
    return acc;
}
} // namespace

TEST_CASE("S hand values")
{
    // i=1, j=0, x=2, u=pi: n=0 gives 2, n=1 gives (2-1)cos(pi) = -1, n=2 has
    // zero weight, so S = 1.
    CHECK(S_sum(1, 0, 2.0, kPi) == doctest::Approx(1.0).epsilon(1e-14));
    // i=1, j=1, x=2, u=pi/2: n=0 vanishes, n=1 gives (2-1)*1*cos(pi) = -1
    CHECK(S_sum(1, 1, 2.0, kPi / 2) == doctest::Approx(-1.0).epsilon(1e-14));
    // i=0, j=0, x=2.5: the n = 0,1,2 terms give 1 + cos u + cos 2u
    for (double u : {0.3, 1.0, 2.0})
        CHECK(S_sum(0, 0, 2.5, u) ==
              doctest::Approx(1.0 + std::cos(u) + std::cos(2 * u)).epsilon(1e-14));
}

TEST_CASE("S agrees with a naive reference loop")
{
    for (int i : {0, 1, 2})
        for (int j : {0, 1, 2})
            for (double x : {7.0, 31.5, 200.0})
                for (double u : {0.05, 0.7, 2.9}) {
                    const double ref = S_naive(i, j, x, u);
                    // rounding scales with the term size, not the cancelled sum
                    const double scale = x * std::pow(x, i + j);
                    CHECK(std::fabs(S_sum(i, j, x, u) - ref) <= 1e-13 * scale);
                }
}

TEST_CASE("d/du of S^{i,j} is S^{i,j+1}")
{
    const double h = 1e-6;
    for (int i : {0, 1})
        for (int j : {0, 1})
            for (double u : {0.4, 1.3}) {
                const double x = 20.5;
                const double fd = (S_sum(i, j, x, u + h) - S_sum(i, j, x, u - h)) / (2 * h);
                const double an = S_sum(i, j + 1, x, u);
                CHECK(std::fabs(fd - an) <= 1e-4 * (1.0 + std::fabs(an)));
            }
}

TEST_CASE("two-regime envelope fits for representative cells")
{
    for (auto [i, j] : {std::pair{0, 0}, {1, 1}, {2, 0}, {0, 2}}) {
        BoundFitReport rep = check_lemma5(default_lemma5_grid(i, j));
        INFO("cell (", i, ",", j, ")");
        CHECK(rep.pass);
        CHECK(rep.violations == 0);
        for (const auto& e : rep.exponents) {
            INFO(e.label, ": fitted ", e.fitted, " predicted ", e.predicted);
            CHECK(e.pass);
        }
    }
}

TEST_CASE("alternating kernel sums: frozen value, degenerate w, order guard")
{
    Kernel kn = Kernel::cesaro(1.0, 0.5);
    // w = 2: q(0) - q(1/2) + q(1) = 1.5 (1 - sqrt(1/2)) + 0
    CHECK(alt_sum(kn, 0, 2.0) == doctest::Approx(0.43933982822017864).epsilon(1e-12));
    // w = 1: q(0) - q(1) = q(0)
    CHECK(alt_sum(kn, 0, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(alt_sum(kn, 2, 8.0), OrderTooHigh); // p > k
    CHECK_THROWS_AS(alt_sum(kn, 0, 0.5), ParameterOutOfRange);
}

TEST_CASE("alternating sums saturate: sup stops growing with w")
{
    Kernel kn = Kernel::cesaro(2.5, 0.4);
    for (int p : {0, 1}) {
        BoundFitReport rep = check_lemma8_saturation(kn, p, 11);
        INFO("p = ", p, " constant ", rep.constants.front().second);
        CHECK(rep.pass);
        CHECK(rep.constants.front().second > 0.0);
    }
}

TEST_CASE("oscillatory kernel sums: direct evaluation basics")
{
    Kernel kn = Kernel::cesaro(2.5, 0.4); // k = 2, r = 1 -> m = 1
    CHECK(G_direct(kn, 1, 0, 0.5, 1.0) == 0.0); // empty sum below w = 1
    // brute force oracle
    const double w = 9.5, u = 0.7;
    for (int i : {0, 1}) {
        double ref = 0.0;
        const int pw = 2 + 1 - i;
        for (int n = 1; n <= 9; ++n)
            ref += kn.q(n / w) * std::pow(double(n), pw) * std::cos(n * u + pw * kPi / 2);
        CHECK(G_direct(kn, 1, i, w, u) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(G_direct(kn, 1, 2, w, u), IndexOutOfRange);     // i > m
    CHECK_THROWS_AS(G_direct(kn, 3, 0, w, u), ParameterOutOfRange); // r > k
}

TEST_CASE("integral representation reproduces the direct sums")
{
    Kernel kn = Kernel::cesaro(2.5, 0.4);
    for (int i : {0, 1})
        for (double w : {5.0, 12.5, 30.0})
            for (double u : {0.3, 1.0, 3.0}) {
                const double direct = G_direct(kn, 1, i, w, u);
                const double via = G_via_representation(kn, 1, i, w, u);
                CHECK(std::fabs(via - direct) <= 1e-6 * (1.0 + std::fabs(direct)));
            }
    Kernel k1 = Kernel::cesaro(1.2, 0.5); // k = 1 path
    for (double w : {7.5, 20.0}) {
        const double direct = G_direct(k1, 1, 0, w, 0.8);
        const double via = G_via_representation(k1, 1, 0, w, 0.8);
        CHECK(std::fabs(via - direct) <= 1e-6 * (1.0 + std::fabs(direct)));
    }
}

TEST_CASE("typed-mean sums and validation")
{
    std::vector<double> lam = {1.0, 2.0, 3.0};
    std::vector<double> a = {1.0, 1.0, 1.0};
    CHECK(riesz_mean(lam, a, 1.0, 2.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(riesz_mean(lam, a, 0.0, 2.5) == doctest::Approx(2.0));
    CHECK(riesz_mean(lam, a, 2.0, 0.5) == 0.0);
    CHECK_THROWS_AS(riesz_mean({2.0, 1.0}, {1.0, 1.0}, 1.0, 3.0), ParameterOutOfRange);
    CHECK_THROWS_AS(riesz_mean({-1.0, 1.0}, {1.0, 1.0}, 1.0, 3.0), ParameterOutOfRange);
    CHECK_THROWS_AS(riesz_mean(lam, {1.0}, 1.0, 3.0), ParameterOutOfRange);
}

TEST_CASE("k-fold derivative of the order-k mean recovers the raw mean")
{
    std::vector<double> lam = {1.0, 2.0, 3.0};
    std::vector<double> a = {2.0, -1.0, 4.0};
    CHECK(check_lemma6_identity(lam, a, 1, 2.5, 1e-4) <= 1e-6);
    CHECK(check_lemma6_identity(lam, a, 2, 2.5, 1e-3) <= 1e-4);
    CHECK_THROWS_AS(check_lemma6_identity(lam, a, 2, 2.0005, 1e-3), TooCloseToJump);
}

TEST_CASE("decay suite: all five composite reports pass")
{
    Kernel kn = Kernel::cesaro(2.5, 0.4);
    std::vector<BoundFitReport> reps = check_decay_lemmas(kn, 1);
    REQUIRE(reps.size() == 5);
    for (const auto& rep : reps) {
        INFO("lemma ", rep.lemma, " [", rep.bound_form, "]");
        CHECK(rep.pass);
        for (const auto& e : rep.exponents) {
            INFO(e.label, ": fitted ", e.fitted, " predicted ", e.predicted);
            CHECK(e.pass);
        }
    }
}
