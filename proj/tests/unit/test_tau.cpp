#include <doctest.h>

#include <cmath>

#include "isingtau/errors.hpp"
#include "isingtau/tau.hpp"

using namespace isingtau;

TEST_SUITE("tau") {
    TEST_CASE("branch parsing and factors") {
        CHECK(parse_branch("plus") == Branch::plus);
        CHECK(parse_branch("-") == Branch::minus);
        CHECK_THROWS_AS(parse_branch("up"), DomainError);
        CHECK(branch_factor(Branch::minus, 0.0) == 1.0);
        CHECK(branch_factor(Branch::plus, 0.0) == 0.0);
        CHECK(to_string(TauRoute::nu_product) == "nu_product");
    }

    TEST_CASE("trivial family") {
        CHECK(tau_hamiltonian(1.0, {0.0, 0.0}, Branch::minus).value == 1.0);
        CHECK(tau_action(1.0, {0.0, 0.0}, Branch::plus).value == 0.0);
        CHECK(action_S(1.0, {0.0, 0.0}).value == 0.0);
    }

    TEST_CASE("hamiltonian and action routes agree") {
        for (double t : {0.1, 1.0, 5.0}) {
            const TauValue h = tau_hamiltonian(t, {0.75, 0.0}, Branch::minus);
            const TauValue a = tau_action(t, {0.75, 0.0}, Branch::minus);
            CHECK(std::abs(h.value / a.value - 1.0) <= 1e-5);
            CHECK(h.est_error <= 1e-8);
            CHECK(a.est_error <= 1e-6);
        }
    }

    TEST_CASE("action identity") {
        const std::vector<double> ts{0.1, 1.0, 5.0};
        for (const ActionIdentity& a : action_identity(ts, {0.95, 0.0})) {
            CHECK(a.residual <= 1e-6 * (1.0 + std::abs(a.action)));
        }
    }

    TEST_CASE("action routes require nu = 0") {
        CHECK_THROWS_AS(tau_action(1.0, {0.5, 0.25}, Branch::minus), DomainError);
        CHECK_THROWS_AS(action_identity_residual(1.0, {0.5, 0.25}), DomainError);
    }

    TEST_CASE("nu routes") {
        const TauValue d = tau_nu(1.0, {0.5, 0.25}, Branch::minus, NuRoute::g1_direct);
        const TauValue p = tau_nu(1.0, {0.5, 0.25}, Branch::minus, NuRoute::g10_product);
        CHECK(std::abs(d.value / p.value - 1.0) <= 1e-7);
        const TauValue h = tau_hamiltonian(1.0, {0.5, 0.0}, Branch::plus);
        const TauValue z = tau_nu(1.0, {0.5, 0.0}, Branch::plus, NuRoute::g10_product);
        CHECK(std::abs(h.value / z.value - 1.0) <= 1e-8);
        for (const NuActionTerms& a : nu_action_identity(1.0, {0.5, 0.25})) CHECK(a.residual <= 1e-6);
        CHECK_THROWS_AS(nu_action_residual(1.0, {0.5, 0.25}, 3), DomainError);
    }

    TEST_CASE("thread count does not change the quadrature") {
        LambdaQuadrature one, four;
        four.threads = 4;
        const std::vector<double> ts{0.5, 2.0};
        const auto a = action_S(ts, {0.5, 0.0}, one);
        const auto b = action_S(ts, {0.5, 0.0}, four);
        for (std::size_t i = 0; i < ts.size(); ++i) CHECK(a[i].value == b[i].value);
    }

    TEST_CASE("evaluation points outside the orbit") {
        const std::vector<double> bad{20.0};
        CHECK_THROWS_AS(action_S(bad, {0.5, 0.0}), DomainError);
    }
}
