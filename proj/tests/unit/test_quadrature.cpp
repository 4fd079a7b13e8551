#include <doctest.h>

#include <cmath>

#include "isingtau/constants.hpp"
#include "isingtau/quadrature.hpp"

using namespace isingtau;

TEST_SUITE("quadrature") {
    TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
        const quad::Rule r = quad::gauss_legendre(8);
        CHECK(r.nodes.size() == 8);
        double sum_w = 0.0;
        for (double w : r.weights) sum_w += w;
        CHECK(std::abs(sum_w - 2.0) <= 1e-14);
        CHECK(std::abs(quad::apply(r, [](double x) { return std::pow(x, 14); }) - 2.0 / 15.0) <= 1e-14);
        for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }

    TEST_CASE("mapped rule") {
        const quad::Rule r = quad::gauss_legendre(32, 0.0, 1.0);
        CHECK(std::abs(quad::apply(r, [](double x) { return std::exp(x); }) - (std::exp(1.0) - 1.0)) <= 1e-14);
    }

    TEST_CASE("adaptive Gauss-Kronrod") {
        const quad::Estimate g = quad::integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, 3.0);
        CHECK(std::abs(g.value - 0.5 * std::sqrt(isingtau::kPi) * std::erf(3.0)) <= 1e-15);
        CHECK(g.error <= 1e-13);
    }

    TEST_CASE("error estimate covers endpoint singularities") {
        const quad::Estimate e = quad::integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
        CHECK(std::abs(e.value - 2.0 / 3.0) <= e.error);
        const quad::Estimate l = quad::integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10);
        CHECK(std::abs(l.value + 1.0) <= l.error);
    }
}
