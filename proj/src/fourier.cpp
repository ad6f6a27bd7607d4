#include "nqa/fourier.hpp"

#include <cmath>
#include <numbers>

#include "nqa/errors.hpp"

namespace nqa {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to_pi(double t)
{
    t = std::fmod(t + kPi, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    return t - kPi;
}

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// i-th derivative of f at x: analytic when available, else a central
// binomial stencil with step 1e-2 (i is small, <= r-1).
double function_derivative(const PeriodicFunction& f, int i, double x)
{
    if (i == 0) return f.eval(x);
    if (i <= (int)f.derivs.size() && f.derivs[i - 1]) return f.derivs[i - 1](x);
    const double h = 1e-2;
    double sum = 0.0, binom = 1.0;
    for (int s = 0; s <= i; ++s) {
        sum += ((s % 2) ? -binom : binom) * f.eval(x + (0.5 * i - s) * h);
        binom = binom * (i - s) / (s + 1);
    }
    return sum / std::pow(h, i);
}

} // namespace

PeriodicFunction named_function(const std::string& name)
{
    PeriodicFunction f;
    f.name = name;
    if (name == "sin") {
        f.eval = [](double t) { return std::sin(t); };
        for (int j = 1; j <= 6; ++j)
            f.derivs.push_back([j](double t) { return std::sin(t + j * kPi / 2); });
    } else if (name == "cos") {
        f.eval = [](double t) { return std::cos(t); };
        for (int j = 1; j <= 6; ++j)
            f.derivs.push_back([j](double t) { return std::cos(t + j * kPi / 2); });
    } else if (name == "sawtooth") {
        f.eval = [](double t) { return wrap_to_pi(t); };
    } else if (name == "square") {
        f.eval = [](double t) {
            const double s = std::sin(t);
            return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
        };
    } else if (name == "abs") {
        f.eval = [](double t) { return std::fabs(wrap_to_pi(t)); };
    } else {
        throw ParameterOutOfRange("unknown function name: " + name);
    }
    return f;
}

FourierModel fourier_coefficients(const PeriodicFunction& f, int N, int quad_nodes)
{
    if (N < 1)
        throw ParameterOutOfRange("fourier_coefficients: N >= 1 required");
    if (quad_nodes < 4 * N)
        throw ParameterOutOfRange("fourier_coefficients: quad_nodes >= 4N required");

    FourierModel m;
    m.N = N;
    m.a.assign(N + 1, 0.0);
    m.b.assign(N + 1, 0.0);
    const int M = quad_nodes;
    std::vector<double> fv(M);
    for (int i = 0; i < M; ++i)
        fv[i] = f.eval(-kPi + 2.0 * kPi * i / M);
    for (int n = 0; n <= N; ++n) {
        double ca = 0.0, cb = 0.0;
        for (int i = 0; i < M; ++i) {
            const double t = -kPi + 2.0 * kPi * i / M;
            ca += fv[i] * std::cos(n * t);
            cb += fv[i] * std::sin(n * t);
        }
        m.a[n] = 2.0 * ca / M;
        if (n >= 1) m.b[n] = 2.0 * cb / M;
    }
    return m;
}

PeriodicFunction trig_polynomial(const FourierModel& m)
{
    PeriodicFunction f;
    f.name = "trig_polynomial";
    f.eval = [m](double t) {
        double s = 0.5 * m.a[0];
        for (int n = 1; n <= m.N; ++n)
            s += m.a[n] * std::cos(n * t) + m.b[n] * std::sin(n * t);
        return s;
    };
    for (int j = 1; j <= 8; ++j) {
        f.derivs.push_back([m, j](double t) {
            double s = 0.0;
            for (int n = 1; n <= m.N; ++n)
                s += std::pow(double(n), j) * (m.a[n] * std::cos(n * t + j * kPi / 2) +
                                               m.b[n] * std::sin(n * t + j * kPi / 2));
            return s;
        });
    }
    return f;
}

double conjugate_term(const FourierModel& m, int n, double x)
{
    if (n < 1 || n > m.N)
        throw IndexOutOfRange("conjugate_term: n out of range");
    return m.b[n] * std::cos(n * x) - m.a[n] * std::sin(n * x);
}

double derived_conjugate_term(const FourierModel& m, int n, double x, int r)
{
    if (n < 1 || n > m.N)
        throw IndexOutOfRange("derived_conjugate_term: n out of range");
    if (r < 0)
        throw ParameterOutOfRange("derived_conjugate_term: r >= 0 required");
    const double ph = r * kPi / 2;
    return std::pow(double(n), r) *
           (m.b[n] * std::cos(n * x + ph) - m.a[n] * std::sin(n * x + ph));
}

DerivedSeriesSpec make_derived_spec(const PeriodicFunction& f, double x, int r, double alpha)
{
    if (r < 1)
        throw ParameterOutOfRange("derived series: r >= 1 required");
    if (!(r < alpha))
        throw ParameterOutOfRange("derived series: requires r < alpha");
    DerivedSeriesSpec spec;
    spec.x = x;
    spec.r = r;
    spec.alpha = alpha;
    spec.theta.assign(r, 0.0);
    for (int i = 0; i < r; ++i)
        if ((i + r) % 2 == 1) spec.theta[i] = function_derivative(f, i, x);
    return spec;
}

double p_polynomial(const DerivedSeriesSpec& spec, double u)
{
    double s = 0.0, upow = 1.0;
    for (int i = 0; i < (int)spec.theta.size(); ++i) {
        s += spec.theta[i] * upow / factorial(i);
        upow *= u;
    }
    return s;
}

namespace {

// Numerator of h times 1/2: {f(x+u)-P(u)} - (-1)^r {f(x-u)-P(-u)}, halved.
double h_numerator_half(const PeriodicFunction& f, const DerivedSeriesSpec& spec, double u)
{
    const double sgn = (spec.r % 2) ? -1.0 : 1.0;
    const double plus = f.eval(spec.x + u) - p_polynomial(spec, u);
    const double minus = f.eval(spec.x - u) - p_polynomial(spec, -u);
    return 0.5 * (plus - sgn * minus);
}

} // namespace

double h_function(const PeriodicFunction& f, const DerivedSeriesSpec& spec, double u)
{
    if (std::fabs(u) < 1e-10)
        throw SingularAtZero("h_function: |u| below the 1e-10 floor");
    return h_numerator_half(f, spec, u) / std::pow(u, spec.r);
}

double fractional_integral_H(const std::function<double(double)>& h, double beta, double t,
                             double tol)
{
    if (beta <= 0)
        throw ParameterOutOfRange("fractional_integral_H: beta > 0 required");
    if (t <= 0)
        throw ParameterOutOfRange("fractional_integral_H: t > 0 required");
    // u = t (1 - s^{1/beta}) turns the integral into
    // t^beta / Gamma(beta+1) * int_0^1 h(t (1 - s^{1/beta})) ds.
    const double inv_beta = 1.0 / beta;
    QuadOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    QuadResult r = integrate(
        [&](double s) { return h(t * (1.0 - std::pow(s, inv_beta))); }, 0.0, 1.0, opt);
    if (!r.converged || !std::isfinite(r.value))
        throw NonIntegrable("fractional_integral_H: refinement diverged at t = " +
                            std::to_string(t));
    return std::pow(t, beta) / std::tgamma(beta + 1.0) * r.value;
}

double h_beta(const std::function<double(double)>& h, double beta, double t)
{
    if (beta == 0.0) return h(t);
    return std::tgamma(1.0 + beta) * std::pow(t, -beta) * fractional_integral_H(h, beta, t);
}

double FractionalIntegralTable::operator()(double tq) const
{
    if (t.empty()) return 0.0;
    if (tq <= t.front()) return H.front();
    if (tq >= t.back()) return H.back();
    auto it = std::lower_bound(t.begin(), t.end(), tq);
    const std::size_t i = std::size_t(it - t.begin());
    const double w = (tq - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * H[i - 1] + w * H[i];
}

FractionalIntegralTable build_H_table(const std::function<double(double)>& h, double beta,
                                      const std::vector<double>& t_grid)
{
    FractionalIntegralTable tab;
    tab.beta = beta;
    tab.t = t_grid;
    tab.H.resize(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        try {
            tab.H[i] = fractional_integral_H(h, beta, t_grid[i]);
        } catch (const QuadratureFailure&) {
            tab.H[i] = std::numeric_limits<double>::quiet_NaN();
            tab.ok = false;
        }
    }
    return tab;
}

std::string to_string(HypothesisVerdict v)
{
    switch (v) {
    case HypothesisVerdict::Holds: return "Holds";
    case HypothesisVerdict::Fails: return "Fails";
    case HypothesisVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<double> default_t_grid()
{
    std::vector<double> g;
    const int n = 200;
    const double lo = kPi * std::pow(2.0, -15), hi = kPi;
    for (int i = 0; i < n; ++i)
        g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return g;
}

std::vector<double> default_eps_list()
{
    std::vector<double> e;
    for (int j = 1; j <= 14; ++j) e.push_back(kPi * std::pow(2.0, -j));
    return e;
}

namespace {

// Cauchy test on the partial-integral sequence as eps decreases.
void classify_partials(HypothesisReport& rep)
{
    const auto& p = rep.partials;
    if (p.size() < 3) {
        rep.integral_finite = false;
        return;
    }
    const double last = p[p.size() - 1].second;
    const double prev = p[p.size() - 2].second;
    const double rel = std::fabs(last - prev) / std::max(std::fabs(last), 1e-300);
    rep.integral_finite = rel < 0.05;
    if (!rep.integral_finite) {
        // decreasing increments: slow growth, call it inconclusive
        bool decreasing = true;
        for (std::size_t i = p.size() - 3; i + 2 < p.size() + 1 && i + 2 <= p.size() - 1; ++i) {
            const double d1 = p[i + 1].second - p[i].second;
            const double d2 = (i + 2 < p.size()) ? p[i + 2].second - p[i + 1].second : d1;
            if (d2 > d1 * 1.0001) decreasing = false;
        }
        rep.note += decreasing ? "partials grow with shrinking increments; " : "partials not Cauchy; ";
        rep.verdict = decreasing ? HypothesisVerdict::Inconclusive : HypothesisVerdict::Fails;
    }
}

} // namespace

HypothesisReport check_theorem1(const PeriodicFunction& f, const DerivedSeriesSpec& spec,
                                const std::vector<double>& grid,
                                const std::vector<double>& eps_list)
{
    const double beta = spec.alpha - spec.r;
    if (beta <= 0)
        throw ParameterOutOfRange("check_theorem1: requires beta = alpha - r > 0");
    HypothesisReport rep;
    rep.theorem = 1;
    auto h = [&](double u) { return h_numerator_half(f, spec, u) / std::pow(u, spec.r); };

    // (i) H_beta(+0) by Aitken extrapolation along t_j = 0.1 * 2^-j.
    std::vector<double> v;
    try {
        for (int j = 0; j <= 12; ++j)
            v.push_back(fractional_integral_H(h, beta, 0.1 * std::pow(2.0, -j)));
    } catch (const QuadratureFailure& e) {
        rep.numerical_failure = true;
        rep.limit_ok = false;
        rep.note = std::string("H_beta evaluation failed: ") + e.what();
        rep.verdict = HypothesisVerdict::Fails;
        return rep;
    }
    {
        const double v0 = v[v.size() - 3], v1 = v[v.size() - 2], v2 = v.back();
        const double denom = (v2 - v1) - (v1 - v0);
        rep.limit_at_zero = std::fabs(denom) > 1e-300 ? v2 - (v2 - v1) * (v2 - v1) / denom
                                                      : v2;
        rep.limit_error = std::fabs(v2 - v1);
        rep.limit_ok = std::fabs(rep.limit_at_zero) < 1e-6;
    }

    // (ii) variation integral int_eps^pi t^-beta |dH_beta(t)| from the table.
    FractionalIntegralTable tab = build_H_table(h, beta, grid);
    if (!tab.ok) {
        rep.numerical_failure = true;
        rep.note += "H_beta table has failed samples; ";
        rep.verdict = HypothesisVerdict::Fails;
        return rep;
    }
    std::vector<double> eps = eps_list; // assume decreasing
    for (double e : eps) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < tab.t.size(); ++i) {
            if (tab.t[i] < e) continue;
            const double tm = std::sqrt(tab.t[i] * tab.t[i + 1]);
            acc += std::pow(tm, -beta) * std::fabs(tab.H[i + 1] - tab.H[i]);
        }
        rep.partials.emplace_back(e, acc);
    }
    rep.verdict = HypothesisVerdict::Holds;
    classify_partials(rep);
    if (!rep.limit_ok) rep.verdict = HypothesisVerdict::Fails;
    else if (rep.integral_finite) rep.verdict = HypothesisVerdict::Holds;
    return rep;
}

HypothesisReport check_theorem2(const PeriodicFunction& f, const DerivedSeriesSpec& spec,
                                const std::vector<double>& grid,
                                const std::vector<double>& eps_list)
{
    const double rho = spec.alpha - spec.r - 1;
    if (rho < 0)
        throw ParameterOutOfRange("check_theorem2: requires rho = alpha - r - 1 >= 0");
    HypothesisReport rep;
    rep.theorem = 2;
    auto h = [&](double u) { return h_numerator_half(f, spec, u) / std::pow(u, spec.r); };

    std::vector<double> g(grid.size());
    try {
        for (std::size_t i = 0; i < grid.size(); ++i)
            g[i] = std::fabs(h_beta(h, rho, grid[i])) / grid[i];
    } catch (const QuadratureFailure& e) {
        rep.numerical_failure = true;
        rep.note = std::string("h_rho evaluation failed: ") + e.what();
        rep.verdict = HypothesisVerdict::Fails;
        return rep;
    }
    for (double e : eps_list) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if (grid[i] < e) continue;
            acc += 0.5 * (g[i] + g[i + 1]) * (grid[i + 1] - grid[i]);
        }
        rep.partials.emplace_back(e, acc);
    }
    rep.verdict = HypothesisVerdict::Holds;
    classify_partials(rep);
    if (rep.integral_finite) rep.verdict = HypothesisVerdict::Holds;
    return rep;
}

std::pair<double, double> alpha_beta_split(const PeriodicFunction& f,
                                           const DerivedSeriesSpec& spec, int n)
{
    if (n < 1)
        throw ParameterOutOfRange("alpha_beta_split: n >= 1 required");
    if (spec.r < 1)
        throw ParameterOutOfRange("alpha_beta_split: r >= 1 required");
    const int r = spec.r;
    const double sgn = (r % 2) ? -1.0 : 1.0;
    const double ph = r * kPi / 2;
    // u^r h(u) is the halved numerator, so the integrand stays bounded at 0.
    auto integrand = [&](double u) {
        return h_numerator_half(f, spec, u) * std::pow(double(n), r) *
               std::sin(n * u + ph);
    };
    std::vector<double> breaks;
    for (int s = 1; s < n; ++s) breaks.push_back(s * kPi / n);
    QuadResult q = integrate_split(integrand, 0.0, kPi, breaks);
    if (!q.converged)
        throw QuadratureFailure("alpha_beta_split: quadrature failed");
    const double alpha_n = sgn * (2.0 / kPi) * q.value;
    return {alpha_n, beta_n_closed_form(spec, n)};
}

double beta_n_closed_form(const DerivedSeriesSpec& spec, int n)
{
    const int r = spec.r;
    const int p = (r % 2) ? (r - 1) / 2 : r / 2;
    double total = 0.0;
    for (int mu = 1; mu <= p; ++mu) {
        double inner = 0.0;
        for (int j = mu; j <= p; ++j) {
            const int idx = (r % 2) ? 2 * j : 2 * j - 1; // theta index
            if (idx >= (int)spec.theta.size()) continue;
            inner += spec.theta[idx] * std::pow(kPi, 2 * j - 2 * mu) /
                     factorial(2 * j - 2 * mu + 1);
        }
        const double s = ((p + mu) % 2) ? -1.0 : 1.0;
        total += s * std::pow(double(n), 2 * p - 2 * mu + 1) * inner;
    }
    const double alt = (n % 2) ? -1.0 : 1.0;
    return 2.0 * alt * total;
}

SeriesSource derived_conjugate_series_source(const PeriodicFunction& f,
                                             const DerivedSeriesSpec& spec, int N)
{
    const int nodes = std::max(4 * N, 2048);
    FourierModel m = fourier_coefficients(f, N, nodes);
    SeriesSource s;
    s.kind = SeriesKind::DerivedConjugate;
    s.max_n_hint = N;
    s.term = [m, x = spec.x, r = spec.r](long long n) {
        if (n < 1 || n > m.N) return 0.0;
        return derived_conjugate_term(m, (int)n, x, r);
    };
    return s;
}

} // namespace nqa
