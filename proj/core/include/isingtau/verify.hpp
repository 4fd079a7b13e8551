#pragma once

#include <string>
#include <vector>

#include "isingtau/fixtures.hpp"
#include "isingtau/report.hpp"

namespace isingtau {

struct VerifyOptions {
    double tol_scale = 1.0;              // multiplies every tolerance
    unsigned threads = 1;                // lambda-quadrature workers
    const FixtureSet* fixtures = nullptr; // adds "fixture:" checks when set
};

/// Suites: specfn, action, tau, nu, fredholm, constants, all.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws DomainError for unknown names.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& options = {});

/// Solver settings used for the small-t asymptotic laws (rel 1e-12, abs 1e-14).
SolverConfig precise_config();

/// tau_- - 1 without cancellation: expm1(a/2) cosh(q/2) + 2 sinh^2(q/4).
double tau_minus_excess(const Trajectory& traj, double t);

}  // namespace isingtau
