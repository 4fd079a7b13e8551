#pragma once

#include <stdexcept>
#include <string>

namespace isingtau {

/// Argument outside the domain of a function (t <= 0, lambda*pi > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Failure inside an ODE solve: step-size underflow, overflow, bad seed.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double where)
        : std::runtime_error(what), where_(where) {}
    explicit SolverError(const std::string& what)
        : std::runtime_error(what), where_(0.0) {}

    /// Value of t at which the failure was detected (0 when not applicable).
    double where() const noexcept { return where_; }

private:
    double where_;
};

/// Evaluation point outside a trajectory's grid.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace isingtau
