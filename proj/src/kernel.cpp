#include "nqa/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nqa/errors.hpp"

namespace nqa {

namespace {

double falling_coeff(double a, int order)
{
    // a * (a-1) * ... * (a-order), i.e. the coefficient of
    // d^order/dt^order [(1-t)^{a-1}] up to the (-1)^order sign.
    double c = a;
    for (int j = 1; j <= order; ++j) c *= (a - j);
    return c;
}

} // namespace

Kernel Kernel::cesaro(double alpha, double delta)
{
    if (alpha < 0)
        throw ParameterOutOfRange("cesaro kernel: alpha must be >= 0");
    if (delta <= 0)
        throw ParameterOutOfRange("cesaro kernel: delta must be > 0");
    const int k = int(std::floor(alpha));
    if (alpha + delta > k + 1)
        throw ParameterOutOfRange("cesaro kernel: requires alpha + delta <= floor(alpha) + 1");

    Kernel kn;
    kn.spec_ = {KernelFamily::CesaroType, alpha, delta, k};
    const double a = alpha + delta;
    kn.q_ = [a](double t) { return a * std::pow(1.0 - t, a - 1.0); };
    kn.derivs_.resize(std::max(0, k));
    for (int b = 1; b <= k; ++b) {
        const double coeff = falling_coeff(a, b) * ((b % 2) ? -1.0 : 1.0);
        kn.derivs_[b - 1] = [coeff, a, b](double t) {
            return coeff * std::pow(1.0 - t, a - b - 1.0);
        };
    }
    return kn;
}

Kernel Kernel::user_defined(double alpha, std::function<double(double)> q,
                            std::vector<std::function<double(double)>> derivs)
{
    if (alpha < 0)
        throw ParameterOutOfRange("user kernel: alpha must be >= 0");
    Kernel kn;
    kn.spec_ = {KernelFamily::UserDefined, alpha, 0.0, int(std::floor(alpha))};
    kn.q_ = std::move(q);
    kn.derivs_ = std::move(derivs);
    return kn;
}

double Kernel::q(double t) const { return q_(t); }

bool Kernel::has_analytic_deriv(int order) const
{
    if (order == 0) return true;
    return order <= int(derivs_.size()) && derivs_[order - 1] != nullptr;
}

double Kernel::fd_deriv(int order, double t) const
{
    // Central difference of the highest available analytic derivative.
    int base = 0;
    for (int b = order - 1; b >= 1; --b) {
        if (has_analytic_deriv(b)) {
            base = b;
            break;
        }
    }
    const int rem = order - base;
    const double h = std::max(1e-5, std::fabs(t) * 1e-7);
    auto eval = [&](double s) {
        return base == 0 ? q_(s) : derivs_[base - 1](s);
    };
    // rem-th central difference stencil.
    double sum = 0.0;
    double binom = 1.0;
    for (int s = 0; s <= rem; ++s) {
        const double node = t + (0.5 * rem - s) * h;
        sum += ((s % 2) ? -binom : binom) * eval(node);
        binom = binom * (rem - s) / (s + 1);
    }
    return sum / std::pow(h, rem);
}

double Kernel::q_deriv(int order, double t) const
{
    if (order == 0) return q_(t);
    if (order > spec_.k)
        throw DerivativeUnavailable("derivative order exceeds k = floor(alpha)");
    if (has_analytic_deriv(order)) return derivs_[order - 1](t);
    if (spec_.family == KernelFamily::CesaroType)
        throw DerivativeUnavailable("cesaro kernel missing derivative closure");
    return fd_deriv(order, t);
}

double Kernel::qk(double t) const
{
    const int k = spec_.k;
    const double d = q_deriv(k, t);
    return (k % 2) ? -d : d;
}

double Kernel::Q(double t) const
{
    if (t <= 0) return 0.0;
    if (spec_.family == KernelFamily::CesaroType)
        return std::pow(std::min(t, 1.0), spec_.alpha + spec_.delta);
    return Q_quadrature(t);
}

double Kernel::Q_quadrature(double t) const
{
    if (t <= 0) return 0.0;
    t = std::min(t, 1.0);
    return integrate_or_throw([this](double u) { return q_(u); }, 1.0 - t, 1.0);
}

double Kernel::Qk(double t) const
{
    if (t <= 0) return 0.0;
    t = std::min(t, 1.0);
    if (spec_.family == KernelFamily::CesaroType) {
        const double a = spec_.alpha + spec_.delta;
        const int k = spec_.k;
        const double c = falling_coeff(a, k); // sign already positive: a - j > 0 for j <= k
        return c * std::pow(t, a - k) / (a - k);
    }
    return Qk_quadrature(t);
}

double Kernel::Qk_quadrature(double t) const
{
    if (t <= 0) return 0.0;
    t = std::min(t, 1.0);
    return integrate_or_throw([this](double u) { return qk(u); }, 1.0 - t, 1.0);
}

std::vector<double> default_admissibility_grid()
{
    std::vector<double> g;
    const int n_log = 48;
    const double lo = 1e-4, hi = 0.5;
    for (int i = 0; i < n_log; ++i)
        g.push_back(lo * std::pow(hi / lo, double(i) / (n_log - 1)));
    for (int i = 1; i <= 12; ++i)
        g.push_back(0.5 + 0.4 * i / 12.0);
    return g;
}

namespace {

// Cumulative integral of Qk(u)/u^{1+alpha-k} along the sorted grid.
std::vector<double> condition7_integrals(const Kernel& kn, const std::vector<double>& ts)
{
    const double expo = 1.0 + kn.spec().alpha - kn.k();
    auto f = [&](double u) { return kn.Qk(u) / std::pow(u, expo); };
    std::vector<double> out(ts.size());
    double acc = 0.0, lo = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        QuadResult r = integrate(f, lo, ts[i]);
        acc += r.value;
        out[i] = acc;
        lo = ts[i];
    }
    return out;
}

double condition7_sup(const Kernel& kn, const std::vector<double>& ts)
{
    const std::vector<double> ints = condition7_integrals(kn, ts);
    double sup = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double denom = kn.Qk(ts[i]) / std::pow(ts[i], kn.spec().alpha - kn.k());
        if (denom <= 0) continue;
        sup = std::max(sup, ints[i] / denom);
    }
    return sup;
}

} // namespace

AdmissibilityReport check_admissibility(const Kernel& kernel,
                                        const std::vector<double>& t_grid, double tol)
{
    AdmissibilityReport rep;
    rep.grid = t_grid;
    rep.tol = tol;
    std::vector<double> ts = t_grid;
    std::sort(ts.begin(), ts.end());
    const int k = kernel.k();

    // (1) q >= 0 on [0,1]
    {
        ConditionResult& c = rep.conditions[0];
        c.id = 1;
        double worst = kernel.q(0.0), worst_t = 0.0;
        for (double t : ts) {
            const double v = kernel.q(t);
            if (v < worst) {
                worst = v;
                worst_t = t;
            }
        }
        c.value = worst;
        c.witness_t = worst_t;
        c.pass = worst >= -tol;
    }

    // (2) integral of q over [0,1] equals 1
    {
        ConditionResult& c = rep.conditions[1];
        c.id = 2;
        QuadResult r = integrate([&](double t) { return kernel.q(t); }, 0.0, 1.0);
        c.value = r.value;
        c.witness_t = 1.0;
        c.pass = r.converged && std::fabs(r.value - 1.0) <= std::max(tol, 1e-8);
        if (!r.converged) c.note = "quadrature did not converge";
    }

    // (3) derivatives up to k-1 exist: analytic vs finite-difference consistency
    {
        ConditionResult& c = rep.conditions[2];
        c.id = 3;
        c.pass = true;
        double worst = 0.0, worst_t = 0.0;
        for (int b = 1; b <= k - 1; ++b) {
            for (double t : ts) {
                if (t < 0.05 || t > 0.9) continue;
                const double h = 1e-5;
                const double fd =
                    (kernel.q_deriv(b - 1, t + h) - kernel.q_deriv(b - 1, t - h)) / (2 * h);
                const double an = kernel.q_deriv(b, t);
                const double err = std::fabs(fd - an) / (1.0 + std::fabs(an));
                if (err > worst) {
                    worst = err;
                    worst_t = t;
                }
            }
        }
        c.value = worst;
        c.witness_t = worst_t;
        c.pass = worst <= 1e-4;
        if (k <= 1) {
            c.pass = true;
            c.note = "vacuous (k <= 1)";
        }
    }

    // (4) derivatives of order < k vanish at t = 1
    {
        ConditionResult& c = rep.conditions[3];
        c.id = 4;
        c.pass = true;
        c.note = k == 0 ? "vacuous (k = 0)" : "";
        for (int b = 0; b <= k - 1; ++b) {
            const double far = std::fabs(kernel.q_deriv(b, 1.0 - 1e-2));
            const double near = std::fabs(kernel.q_deriv(b, 1.0 - 1e-6));
            const bool ok = near <= 0.05 && (near <= 0.5 * far || far <= tol);
            if (!ok) {
                c.pass = false;
                c.witness_t = 1.0;
                c.value = near;
                break;
            }
            c.value = std::max(c.value, near);
            c.witness_t = 1.0;
        }
    }

    // (5) order-k derivative exists on (0,1)
    {
        ConditionResult& c = rep.conditions[4];
        c.id = 5;
        c.pass = true;
        double worst = 0.0, worst_t = 0.0;
        if (k >= 1) {
            for (double t : ts) {
                if (t < 0.05 || t > 0.9) continue;
                const double h = 1e-5;
                double fd, an;
                try {
                    fd = (kernel.q_deriv(k - 1, t + h) - kernel.q_deriv(k - 1, t - h)) / (2 * h);
                    an = kernel.q_deriv(k, t);
                } catch (const DerivativeUnavailable&) {
                    c.pass = false;
                    c.note = "order-k derivative unavailable";
                    break;
                }
                const double err = std::fabs(fd - an) / (1.0 + std::fabs(an));
                if (err > worst) {
                    worst = err;
                    worst_t = t;
                }
            }
            c.value = worst;
            c.witness_t = worst_t;
            if (c.pass) c.pass = worst <= 1e-4;
        } else {
            // k = 0: q itself must be finite on the grid
            for (double t : ts)
                if (!std::isfinite(kernel.q(t))) {
                    c.pass = false;
                    c.witness_t = t;
                }
        }
    }

    // (6) q^k >= 0 and monotonic increasing on (0,1)
    {
        ConditionResult& c = rep.conditions[5];
        c.id = 6;
        c.pass = true;
        double prev = -std::numeric_limits<double>::infinity();
        for (double t : ts) {
            const double v = kernel.qk(t);
            if (v < -tol) {
                c.pass = false;
                c.witness_t = t;
                c.value = v;
                break;
            }
            if (v < prev - tol * (1.0 + std::fabs(prev))) {
                c.pass = false;
                c.witness_t = t;
                c.value = v - prev;
                c.note = "not nondecreasing";
                break;
            }
            prev = v;
            c.value = v;
            c.witness_t = t;
        }
    }

    // (7) int_0^t Q_k(u)/u^{1+alpha-k} du = O(Q_k(t)/t^{alpha-k}):
    // ratio supremum must be finite and stable under grid refinement.
    {
        ConditionResult& c = rep.conditions[6];
        c.id = 7;
        const double sup_coarse = condition7_sup(kernel, ts);
        std::vector<double> fine;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            fine.push_back(ts[i]);
            fine.push_back(0.5 * (ts[i] + ts[i + 1]));
        }
        fine.push_back(ts.back());
        const double sup_fine = condition7_sup(kernel, fine);
        c.value = sup_fine;
        c.witness_t = ts.back();
        c.pass = std::isfinite(sup_fine) && sup_fine <= 1.1 * sup_coarse + tol;
    }

    return rep;
}

} // namespace nqa
