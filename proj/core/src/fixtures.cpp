#include "isingtau/fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isingtau/asymptotics.hpp"
#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/specfn.hpp"

namespace isingtau {

double Fixture::number() const { return std::strtod(value.c_str(), nullptr); }

double Fixture::input(const std::string& key) const {
    const auto it = inputs.find(key);
    if (it == inputs.end()) throw RangeError("fixture " + name + " has no input '" + key + "'");
    return it->second;
}

FixtureSet FixtureSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixtures file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

FixtureSet FixtureSet::parse(const std::string& text) {
    FixtureSet set;
    std::set<std::string> seen;
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        for (const auto& rec : doc.at("fixtures")) {
            Fixture f;
            f.name = rec.at("name").get<std::string>();
            f.value = rec.at("value").get<std::string>();
            f.method = rec.value("method", "");
            for (const auto& [k, v] : rec.at("inputs").items()) f.inputs[k] = v.get<double>();
            if (!seen.insert(f.name).second) throw std::runtime_error("duplicate fixture " + f.name);
            set.fixtures_.push_back(std::move(f));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed fixtures: ") + e.what());
    }
    return set;
}

const Fixture* FixtureSet::find(const std::string& name) const {
    for (const auto& f : fixtures_)
        if (f.name == name) return &f;
    return nullptr;
}

const Fixture& FixtureSet::at(const std::string& name) const {
    const Fixture* f = find(name);
    if (!f) throw RangeError("no fixture named " + name);
    return *f;
}

namespace {

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

double solved_q(double t, double lambda_pi) {
    SolverConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    cfg.t_min = std::min(t, cfg.t_min);
    cfg.sample_points = {t};
    return solve_family(BmtwParams{lambda_pi, 0.0}, cfg).at(t).q;
}

}  // namespace

std::optional<FixtureComparison> evaluate_fixture(const Fixture& f) {
    const std::string& n = f.name;
    if (n == "zeta_prime_minus_one") return FixtureComparison{kConstants.zeta_prime_minus_one, 1e-15};
    if (n == "euler_gamma") return FixtureComparison{kConstants.euler_gamma, 1e-15};
    if (n == "ln_two") return FixtureComparison{kConstants.ln_two, 1e-15};
    if (n == "ln_pi") return FixtureComparison{kConstants.ln_pi, 1e-15};
    if (n == "sqrt_pi") return FixtureComparison{kConstants.sqrt_pi, 1e-15};
    if (n == "wu_constant")
        return FixtureComparison{std::pow(2.0, 0.25) * a_of_lambda(1.0), 1e-12};
    if (starts_with(n, "bessel_k0_")) return FixtureComparison{specfn::bessel_k(0, f.input("t")), 1e-12};
    if (starts_with(n, "bessel_k1_")) return FixtureComparison{specfn::bessel_k(1, f.input("t")), 1e-12};
    if (starts_with(n, "ln_gamma_")) return FixtureComparison{specfn::ln_gamma(f.input("x")), 1e-13};
    if (starts_with(n, "digamma_")) return FixtureComparison{specfn::digamma(f.input("x")), 1e-13};
    if (starts_with(n, "ln_barnes_g_")) return FixtureComparison{specfn::ln_barnes_g(f.input("x")), 1e-12};
    if (starts_with(n, "bc_integral_deriv_"))
        return FixtureComparison{specfn::bc_integral(f.input("t"), f.input("nu")).derivative, 1e-10};
    if (starts_with(n, "bc_integral_"))
        return FixtureComparison{specfn::bc_integral(f.input("t"), f.input("nu"), false).value, 1e-10};
    if (starts_with(n, "b_coeff_")) return FixtureComparison{b_coeff(f.input("sigma"), f.input("nu")), 1e-12};
    if (starts_with(n, "a_of_lambda_limit_")) return FixtureComparison{a_of_lambda(1e-12), 1e-10};
    if (starts_with(n, "a_of_lambda_")) return FixtureComparison{a_of_lambda(f.input("lambda_pi")), 1e-12};
    if (starts_with(n, "c_of_nu_")) return FixtureComparison{c_of_nu(f.input("nu")), 1e-13};
    if (starts_with(n, "psi_")) return FixtureComparison{solved_q(f.input("t"), f.input("lambda_pi")), 1e-9};
    if (starts_with(n, "tau_minus_"))
        return FixtureComparison{
            tau_hamiltonian(f.input("t"), BmtwParams{f.input("lambda_pi"), 0.0}, Branch::minus).value, 1e-8};
    return std::nullopt;
}

VerificationReport fixture_report(const FixtureSet& set) {
    VerificationReport r;
    r.suite = "fixtures";
    for (const auto& f : set.all()) {
        const auto cmp = evaluate_fixture(f);
        if (!cmp) {
            r.notes.push_back("fixture " + f.name + " not recognised");
            continue;
        }
        const double expected = f.number();
        r.add("fixture:" + f.name, cmp->actual, expected,
              std::abs(cmp->actual - expected) / std::max(1.0, std::abs(expected)), cmp->tolerance);
    }
    return r;
}

}  // namespace isingtau
