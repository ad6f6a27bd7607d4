#pragma once

#include <stdexcept>
#include <string>

namespace nqa {

struct ParameterOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DerivativeUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Refinement diverges instead of settling; the integrand looks non-integrable.
struct NonIntegrable : QuadratureFailure {
    using QuadratureFailure::QuadratureFailure;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct OrderTooHigh : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooCloseToJump : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularAtZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConfigInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nqa
