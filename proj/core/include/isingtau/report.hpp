#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isingtau/asymptotics.hpp"
#include "isingtau/tau.hpp"

namespace isingtau {

struct Check {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Named residuals with tolerances. Serialization sorts checks by name; the
/// runtime is only written when requested so that reports can be diffed.
struct VerificationReport {
    std::string suite;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    double runtime_seconds = 0.0;

    /// pass = residual <= tolerance (NaN residuals fail).
    Check& add(std::string name, double lhs, double rhs, double residual, double tolerance);
    /// Absolute residual |lhs - rhs|.
    Check& add_abs(std::string name, double lhs, double rhs, double tolerance);
    /// Relative residual |lhs / rhs - 1|.
    Check& add_rel(std::string name, double lhs, double rhs, double tolerance);

    void merge(const VerificationReport& other);
    bool all_pass() const;
    std::size_t failures() const;
    const Check* find(const std::string& name) const;

    nlohmann::json to_json(bool with_runtime = false) const;
    std::string dump(bool with_runtime = false) const;
};

/// NaN and infinities become null.
nlohmann::json json_number(double x);
/// Rounds to 15 significant digits.
double round_sig15(double x);

nlohmann::json to_json(const TauValue& v);
nlohmann::json to_json(const AsymptoticConstants& c);

}  // namespace isingtau
