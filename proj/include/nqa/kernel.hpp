#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nqa/quadrature.hpp"

namespace nqa {

enum class KernelFamily { CesaroType, UserDefined };

struct KernelSpec {
    KernelFamily family = KernelFamily::CesaroType;
    double alpha = 0.0;
    double delta = 0.0; // CesaroType only
    int k = 0;          // floor(alpha)
};

// An admissible summation kernel q on [0,1] together with its derivatives
// and the tail integrals Q, Q_k. Immutable after construction; all methods
// are const and thread safe.
class Kernel {
public:
    // q(t) = (alpha+delta)(1-t)^{alpha+delta-1}. Requires alpha >= 0,
    // delta > 0 and alpha + delta < floor(alpha) + 1.
    static Kernel cesaro(double alpha, double delta);

    // derivs[b-1] is the analytic derivative of order b; missing orders fall
    // back to central finite differences of q.
    static Kernel user_defined(double alpha, std::function<double(double)> q,
                               std::vector<std::function<double(double)>> derivs = {});

    const KernelSpec& spec() const { return spec_; }
    int k() const { return spec_.k; }

    double q(double t) const;
    // d^order/dt^order q(t), order in [0, k].
    double q_deriv(int order, double t) const;
    // q^k(t) = (-1)^k d^k/dt^k q(t)
    double qk(double t) const;

    // Q(t) = int_{1-t}^{1} q(u) du; closed form t^{alpha+delta} for Cesaro.
    double Q(double t) const;
    double Q_quadrature(double t) const;

    // Q_k(t) = int_{1-t}^{1} q^k(u) du
    double Qk(double t) const;
    double Qk_quadrature(double t) const;

    bool has_analytic_deriv(int order) const;

private:
    KernelSpec spec_;
    std::function<double(double)> q_;
    std::vector<std::function<double(double)>> derivs_; // derivs_[b-1] = order b
    double fd_deriv(int order, double t) const;
};

struct ConditionResult {
    int id = 0; // 1..7
    bool pass = false;
    double witness_t = 0.0; // t at which the worst value was seen
    double value = 0.0;     // the quantity the check looked at
    std::string note;
};

struct AdmissibilityReport {
    std::array<ConditionResult, 7> conditions{};
    std::vector<double> grid;
    double tol = 0.0;
    bool all_pass() const
    {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

// Checks Definition-style admissibility conditions (1)-(7) on a grid in (0,1).
// Failures are recorded in the report, never thrown.
AdmissibilityReport check_admissibility(const Kernel& kernel,
                                        const std::vector<double>& t_grid, double tol);

// Default admissibility grid: log-spaced low end plus linear top end.
std::vector<double> default_admissibility_grid();

} // namespace nqa
