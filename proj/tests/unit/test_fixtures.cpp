#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "isingtau/errors.hpp"
#include "isingtau/fixtures.hpp"

using namespace isingtau;

TEST_SUITE("fixtures") {
    TEST_CASE("parse") {
        const FixtureSet s = FixtureSet::parse(
            R"({"fixtures":[{"name":"ln_two","inputs":{},"value":"0.693147180559945309417232121458176568","method":"m"}]})");
        CHECK(s.size() == 1);
        CHECK(s.at("ln_two").number() == doctest::Approx(std::log(2.0)).epsilon(1e-16));
        CHECK(s.find("other") == nullptr);
        CHECK_THROWS_AS(s.at("ln_two").input("t"), RangeError);
    }

    TEST_CASE("malformed input") {
        CHECK_THROWS_AS(FixtureSet::parse("{"), std::runtime_error);
        CHECK_THROWS_AS(FixtureSet::parse(R"({"fixtures":[{"name":"a"}]})"), std::runtime_error);
        CHECK_THROWS_AS(FixtureSet::parse(R"({"fixtures":[{"name":"a","inputs":{},"value":"1","method":""},
                                                          {"name":"a","inputs":{},"value":"1","method":""}]})"),
                        std::runtime_error);
        CHECK_THROWS_AS(FixtureSet::load("/nonexistent/fixtures.json"), std::runtime_error);
    }

    TEST_CASE("committed fixtures reproduce") {
        const FixtureSet s = FixtureSet::load(ISINGTAU_FIXTURES);
        CHECK(s.size() >= 80);
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.all()[i - 1].name < s.all()[i].name);
        const VerificationReport r = fixture_report(s);
        CHECK(r.checks.size() == s.size());
        for (const Check& c : r.checks) {
            INFO(c.name, " residual ", c.residual);
            CHECK(c.pass);
        }
    }
}
