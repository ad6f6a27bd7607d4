#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nqa/transform.hpp"

namespace nqa {

struct PeriodicFunction {
    std::function<double(double)> eval;                     // 2*pi periodic
    std::vector<std::function<double(double)>> derivs;      // optional, derivs[j-1] = order j
    std::string name;
};

// Library: "sin", "cos", "sawtooth", "square", "abs".
PeriodicFunction named_function(const std::string& name);

struct FourierModel {
    std::vector<double> a; // a[0..N]
    std::vector<double> b; // b[1..N], b[0] unused
    int N = 0;
};

// Trapezoid rule on a uniform grid over one period (spectrally accurate for
// smooth periodic integrands). Requires quad_nodes >= 4N.
FourierModel fourier_coefficients(const PeriodicFunction& f, int N, int quad_nodes);

// Reconstruct the trig polynomial of a model as a PeriodicFunction with
// analytic derivatives.
PeriodicFunction trig_polynomial(const FourierModel& m);

// B_n(x) = b_n cos nx - a_n sin nx
double conjugate_term(const FourierModel& m, int n, double x);

// r-th x-derivative of B_n: n^r (b_n cos(nx + r pi/2) - a_n sin(nx + r pi/2))
double derived_conjugate_term(const FourierModel& m, int n, double x, int r);

struct DerivedSeriesSpec {
    double x = 0.0;
    int r = 1;
    std::vector<double> theta; // theta[0..r-1]
    double alpha = 0.0;        // method order, requires r < alpha
};

// Default thetas: theta_i = f^(i)(x) for i of parity opposite to r (the only
// ones h depends on), so the numerator of h vanishes to order r at u = 0.
DerivedSeriesSpec make_derived_spec(const PeriodicFunction& f, double x, int r, double alpha);

double p_polynomial(const DerivedSeriesSpec& spec, double u);

// h(u) = [{f(x+u) - P(u)} - (-1)^r {f(x-u) - P(-u)}] / (2 u^r)
double h_function(const PeriodicFunction& f, const DerivedSeriesSpec& spec, double u);

// Riemann-Liouville integral H_beta(t) = 1/Gamma(beta) int_0^t (t-u)^{beta-1} h(u) du,
// computed with the endpoint-absorbing substitution u = t (1 - s^{1/beta}).
double fractional_integral_H(const std::function<double(double)>& h, double beta, double t,
                             double tol = 1e-9);

// h_beta(t) = Gamma(1+beta) t^{-beta} H_beta(t); beta = 0 returns h(t).
double h_beta(const std::function<double(double)>& h, double beta, double t);

struct FractionalIntegralTable {
    double beta = 0.0;
    std::vector<double> t; // strictly increasing in (0, pi]
    std::vector<double> H;
    bool ok = true;        // false if any sample failed to converge
    double operator()(double tq) const; // log-linear interpolation
};

FractionalIntegralTable build_H_table(const std::function<double(double)>& h, double beta,
                                      const std::vector<double>& t_grid);

enum class HypothesisVerdict { Holds, Fails, Inconclusive };

std::string to_string(HypothesisVerdict v);

struct HypothesisReport {
    int theorem = 1;
    double limit_at_zero = 0.0;       // extrapolated H_beta(+0) (theorem 1 only)
    double limit_error = 0.0;
    bool limit_ok = true;
    std::vector<std::pair<double, double>> partials; // (eps, partial integral)
    bool integral_finite = false;
    bool numerical_failure = false;
    HypothesisVerdict verdict = HypothesisVerdict::Inconclusive;
    std::string note;
};

std::vector<double> default_t_grid();
std::vector<double> default_eps_list();

// Theorem-1 hypotheses: H_beta(+0) = 0 and int_0^pi t^{-beta} |dH_beta(t)| < inf,
// with beta = alpha - r.
HypothesisReport check_theorem1(const PeriodicFunction& f, const DerivedSeriesSpec& spec,
                                const std::vector<double>& grid,
                                const std::vector<double>& eps_list);

// Theorem-2 hypothesis: rho = alpha - r - 1 >= 0 and int_0^pi t^{-1} |h_rho(t)| dt < inf.
HypothesisReport check_theorem2(const PeriodicFunction& f, const DerivedSeriesSpec& spec,
                                const std::vector<double>& grid,
                                const std::vector<double>& eps_list);

// Splits the r-th derived conjugate term into the h-integral part and the
// polynomial part: alpha_n + beta_n equals derived_conjugate_term.
std::pair<double, double> alpha_beta_split(const PeriodicFunction& f,
                                           const DerivedSeriesSpec& spec, int n);

// Closed form for the polynomial part.
double beta_n_closed_form(const DerivedSeriesSpec& spec, int n);

SeriesSource derived_conjugate_series_source(const PeriodicFunction& f,
                                             const DerivedSeriesSpec& spec, int N);

} // namespace nqa
