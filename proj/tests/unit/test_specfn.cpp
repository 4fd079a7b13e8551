#include <doctest.h>

#include <cmath>

#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/specfn.hpp"

using namespace isingtau;

TEST_SUITE("specfn") {
    TEST_CASE("gamma and digamma special values") {
        CHECK(std::abs(std::exp(specfn::ln_gamma(0.5)) - std::sqrt(kPi)) <= 1e-13);
        CHECK(std::abs(specfn::ln_gamma(1.0)) <= 1e-15);
        CHECK(std::abs(specfn::ln_gamma(5.0) - std::log(24.0)) <= 1e-14);
        CHECK(std::abs(specfn::digamma(1.0) + kConstants.euler_gamma) <= 1e-14);
        CHECK(std::abs(specfn::digamma(0.5) + kConstants.euler_gamma + 2.0 * kConstants.ln_two) <= 1e-14);
    }

    TEST_CASE("ln_gamma recurrence") {
        for (double x : {0.1, 0.7, 1.3, 4.9, 12.5}) {
            CHECK(std::abs(specfn::ln_gamma(x + 1.0) - specfn::ln_gamma(x) - std::log(x)) <= 1e-13 * (1.0 + std::abs(specfn::ln_gamma(x))));
        }
    }

    TEST_CASE("functional equations") {
        for (int i = 1; i <= 9; ++i) {
            const double z = i / 10.0;
            CHECK(std::abs(std::exp(specfn::ln_gamma(1.0 + z)) - z * std::exp(specfn::ln_gamma(z))) <= 1e-12);
            CHECK(std::abs(specfn::ln_barnes_g(1.0 + z) - specfn::ln_gamma(z) - specfn::ln_barnes_g(z)) <= 1e-12);
        }
    }

    TEST_CASE("Barnes G values") {
        CHECK(std::abs(specfn::ln_barnes_g(1.0)) <= 1e-14);
        CHECK(std::abs(specfn::ln_barnes_g(2.0)) <= 1e-14);
        const double half = 3.0 * kConstants.zeta_prime_minus_one - 0.5 * kConstants.ln_pi + kConstants.ln_two / 12.0;
        CHECK(std::abs(2.0 * specfn::ln_barnes_g(0.5) - half) <= 1e-11);
    }

    TEST_CASE("Barnes integral identity") {
        for (double z : {0.25, 0.5, 1.0}) CHECK(specfn::barnes_integral_residual(z) <= 1e-10);
    }

    TEST_CASE("Bessel K known values and Wronskian-like derivative") {
        CHECK(std::abs(specfn::bessel_k(0, 1.0) / 0.42102443824070833334 - 1.0) <= 1e-13);
        CHECK(std::abs(specfn::bessel_k(1, 1.0) / 0.60190723019723457473 - 1.0) <= 1e-13);
        CHECK(std::abs(specfn::bessel_k(0, 10.0) / 1.7780062316167651811e-5 - 1.0) <= 1e-13);
        // continuity across the algorithm switch
        const double below = specfn::bessel_k(0, std::nextafter(2.0, 0.0));
        const double above = specfn::bessel_k(0, std::nextafter(2.0, 3.0));
        CHECK(std::abs(below / above - 1.0) <= 1e-13);
        CHECK(specfn::bessel_k(0, 800.0) == 0.0);
    }

    TEST_CASE("bc_integral reduces to Bessel K at nu = 0") {
        for (int i = 0; i < 20; ++i) {
            const double t = 0.1 * std::pow(300.0, i / 19.0);
            const specfn::BcIntegral r = specfn::bc_integral(t, 0.0);
            CHECK(std::abs(r.value / specfn::bessel_k(0, t) - 1.0) <= 1e-10);
            CHECK(std::abs(r.derivative / specfn::bessel_k(1, t) + 1.0) <= 1e-10);
        }
    }

    TEST_CASE("bc_integral derivative matches finite differences") {
        for (double nu : {-0.25, 0.25, 1.5}) {
            const double t = 1.3, h = 1e-5;
            const double fd = (specfn::bc_integral(t + h, nu, false).value - specfn::bc_integral(t - h, nu, false).value) / (2 * h);
            CHECK(std::abs(specfn::bc_integral(t, nu).derivative / fd - 1.0) <= 1e-8);
        }
    }

    TEST_CASE("domain errors") {
        CHECK_THROWS_AS(specfn::bessel_k(0, 0.0), DomainError);
        CHECK_THROWS_AS(specfn::bessel_k(2, 1.0), DomainError);
        CHECK_THROWS_AS(specfn::ln_gamma(-1.0), DomainError);
        CHECK_THROWS_AS(specfn::bc_integral(1.0, -0.5), DomainError);
        CHECK_THROWS_AS(specfn::bc_integral(-1.0, 0.0), DomainError);
    }
}
