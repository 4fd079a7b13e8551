#pragma once

// Reference values produced by an independent high-precision generator, stored as
//   {"fixtures": [{"name", "inputs": {...}, "value": "<decimal string>", "method"}]}

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isingtau/report.hpp"

namespace isingtau {

struct Fixture {
    std::string name;
    std::map<std::string, double> inputs;
    std::string value;  // decimal string, >= 30 digits
    std::string method;

    double number() const;
    double input(const std::string& key) const;  // throws RangeError when absent
};

class FixtureSet {
public:
    /// Throws std::runtime_error on unreadable files, malformed records or duplicate names.
    static FixtureSet load(const std::string& path);
    static FixtureSet parse(const std::string& text);

    const std::vector<Fixture>& all() const { return fixtures_; }
    const Fixture* find(const std::string& name) const;
    const Fixture& at(const std::string& name) const;
    std::size_t size() const { return fixtures_.size(); }

private:
    std::vector<Fixture> fixtures_;
};

struct FixtureComparison {
    double actual = 0.0;
    double tolerance = 0.0;  // relative to max(1, |expected|)
};

/// Recomputes a fixture with this library. Returns nullopt for unknown names.
std::optional<FixtureComparison> evaluate_fixture(const Fixture& f);

/// One check per recognised fixture, named "fixture:<name>".
VerificationReport fixture_report(const FixtureSet& set);

}  // namespace isingtau
