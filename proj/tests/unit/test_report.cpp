#include <doctest.h>

#include <cmath>
#include <limits>

#include "isingtau/errors.hpp"
#include "isingtau/report.hpp"
#include "isingtau/verify.hpp"

using namespace isingtau;

TEST_SUITE("report") {
    TEST_CASE("checks and pass state") {
        VerificationReport r;
        r.suite = "x";
        r.add_abs("b", 1.0, 1.0 + 1e-9, 1e-8);
        r.add_rel("a", 2.0, 1.0, 0.5);
        CHECK(r.failures() == 1);
        CHECK_FALSE(r.all_pass());
        CHECK(r.find("b")->pass);
        CHECK(r.find("missing") == nullptr);
        r.add("nan", 0.0, 0.0, std::numeric_limits<double>::quiet_NaN(), 1.0);
        CHECK_FALSE(r.find("nan")->pass);
    }

    TEST_CASE("serialization is sorted and runtime optional") {
        VerificationReport r;
        r.suite = "x";
        r.runtime_seconds = 1.5;
        r.add_abs("z", 0.0, 0.0, 1.0);
        r.add_abs("a", 0.0, 0.0, 1.0);
        const nlohmann::json j = r.to_json();
        CHECK(j["checks"][0]["name"] == "a");
        CHECK_FALSE(j.contains("runtime_seconds"));
        CHECK(r.to_json(true).contains("runtime_seconds"));
        CHECK(r.dump() == r.dump());
    }

    TEST_CASE("number helpers") {
        CHECK(json_number(std::numeric_limits<double>::infinity()).is_null());
        CHECK(round_sig15(0.1234567890123456789) == 0.123456789012346);
    }

    TEST_CASE("suites") {
        CHECK(suite_names().size() >= 7);
        CHECK_THROWS_AS(run_suite("nope"), DomainError);
        const VerificationReport r = run_suite("specfn");
        CHECK(r.all_pass());
        VerifyOptions strict;
        strict.tol_scale = 1e-30;
        CHECK_FALSE(run_suite("constants", strict).all_pass());
    }
}
