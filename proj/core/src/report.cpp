#include "isingtau/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace isingtau {

Check& VerificationReport::add(std::string name, double lhs, double rhs, double residual, double tolerance) {
    checks.push_back(Check{std::move(name), lhs, rhs, residual, tolerance, residual <= tolerance});
    return checks.back();
}

Check& VerificationReport::add_abs(std::string name, double lhs, double rhs, double tolerance) {
    return add(std::move(name), lhs, rhs, std::abs(lhs - rhs), tolerance);
}

Check& VerificationReport::add_rel(std::string name, double lhs, double rhs, double tolerance) {
    return add(std::move(name), lhs, rhs, std::abs(lhs / rhs - 1.0), tolerance);
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    runtime_seconds += other.runtime_seconds;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

nlohmann::json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

double round_sig15(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.14e", x);
    return std::strtod(buf, nullptr);
}

nlohmann::json VerificationReport::to_json(bool with_runtime) const {
    std::vector<const Check*> sorted;
    for (const auto& c : checks) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Check* a, const Check* b) { return a->name < b->name; });
    nlohmann::json arr = nlohmann::json::array();
    for (const Check* c : sorted) {
        arr.push_back({{"name", c->name},
                       {"lhs", json_number(c->lhs)},
                       {"rhs", json_number(c->rhs)},
                       {"residual", json_number(c->residual)},
                       {"tolerance", json_number(c->tolerance)},
                       {"pass", c->pass}});
    }
    nlohmann::json j;
    j["suite"] = suite;
    j["checks"] = std::move(arr);
    j["pass"] = all_pass();
    j["failures"] = failures();
    if (!notes.empty()) j["notes"] = notes;
    if (with_runtime) j["runtime_seconds"] = runtime_seconds;
    return j;
}

std::string VerificationReport::dump(bool with_runtime) const { return to_json(with_runtime).dump(2) + "\n"; }

nlohmann::json to_json(const TauValue& v) {
    return {{"t", v.t},
            {"params", {{"lambda_pi", v.params.lambda_pi}, {"nu", v.params.nu}}},
            {"branch", std::string(to_string(v.branch))},
            {"route", std::string(to_string(v.route))},
            {"value", json_number(v.value)},
            {"est_error", json_number(v.est_error)}};
}

nlohmann::json to_json(const AsymptoticConstants& c) {
    return {{"sigma", json_number(round_sig15(c.sigma))},
            {"s", json_number(round_sig15(c.s))},
            {"B", json_number(round_sig15(c.B))},
            {"A", json_number(round_sig15(c.A))},
            {"nu", json_number(round_sig15(c.nu))}};
}

}  // namespace isingtau
