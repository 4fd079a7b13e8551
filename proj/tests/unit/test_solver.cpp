#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "isingtau/asymptotics.hpp"
#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/specfn.hpp"
#include "isingtau/solver.hpp"
#include "isingtau/verify.hpp"

using namespace isingtau;

namespace {

Trajectory orbit(const BmtwParams& p, std::vector<double> ts, SolverConfig cfg = {}) {
    cfg.t_min = std::min(cfg.t_min, *std::min_element(ts.begin(), ts.end()));
    cfg.sample_points = std::move(ts);
    return solve_family(p, cfg);
}

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("parameter and config validation") {
        CHECK_THROWS_AS((BmtwParams{1.5, 0.0}.validate()), DomainError);
        CHECK_THROWS_AS((BmtwParams{-0.1, 0.0}.validate()), DomainError);
        CHECK_THROWS_AS((BmtwParams{0.5, -0.5}.validate()), DomainError);
        SolverConfig cfg;
        cfg.t_min = 20.0;
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        CHECK(std::abs(BmtwParams{1.0, 0.0}.lambda() - 1.0 / kPi) <= 1e-16);
    }

    TEST_CASE("seed from the boundary condition") {
        const SeedState s = seed_at_infinity({1.0, 0.0}, 14.0);
        CHECK(std::abs(s.q0 / (2.0 / kPi * specfn::bessel_k(0, 14.0)) - 1.0) <= 1e-12);
        CHECK(std::abs(s.p0 / (2.0 / kPi * 14.0 * specfn::bessel_k(1, 14.0)) - 1.0) <= 1e-12);
        CHECK(std::abs(s.chi0 - 2.0 * specfn::bessel_k(0, 14.0)) <= 1e-20);
        CHECK_THROWS_AS(seed_at_infinity({1.0, 0.0}, 3.0), SolverError);
    }

    TEST_CASE("lambda = 0 is the trivial orbit") {
        const Trajectory traj = solve_family({0.0, 0.3});
        for (const TrajectoryNode& n : traj.nodes()) {
            CHECK(n.q == 0.0);
            CHECK(n.p == 0.0);
            CHECK(n.acc_H == 0.0);
        }
    }

    TEST_CASE("grid structure and sample points") {
        const Trajectory traj = orbit({0.5, 0.0}, {0.37, 2.2});
        CHECK(traj.t_seed() == 14.0);
        CHECK(traj.t_min() == doctest::Approx(1e-4));
        for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.node(i).t > traj.node(i - 1).t);
        const auto has = [&](double t) {
            return std::any_of(traj.nodes().begin(), traj.nodes().end(), [&](const TrajectoryNode& n) { return n.t == t; });
        };
        CHECK(has(0.37));
        CHECK(has(2.2));
        CHECK(traj.nodes().back().acc_H == 0.0);
        CHECK_THROWS_AS(traj.at(20.0), RangeError);
        CHECK_THROWS_AS(traj.at(1e-6), RangeError);
    }

    TEST_CASE("at() between nodes agrees with a sampled solve") {
        const Trajectory coarse = solve_family({0.75, 0.0});
        const Trajectory fine = orbit({0.75, 0.0}, {0.777});
        CHECK(std::abs(coarse.at(0.777).q - fine.at(0.777).q) <= 1e-9);
        CHECK(std::abs(coarse.at(0.777).acc_H - fine.at(0.777).acc_H) <= 1e-9);
    }

    TEST_CASE("flow consistency dq/dt = -p/t") {
        const Trajectory traj = orbit({0.5, 0.0}, {0.999, 1.0, 1.001});
        const double dq = (traj.at(1.001).q - traj.at(0.999).q) / 0.002;
        CHECK(std::abs(dq + traj.at(1.0).p) <= 1e-6);
    }

    TEST_CASE("seed-point independence") {
        SolverConfig a, b;
        b.t_seed = 24.0;
        const double qa = orbit({0.5, 0.0}, {1.0}, a).at(1.0).q;
        const double qb = orbit({0.5, 0.0}, {1.0}, b).at(1.0).q;
        CHECK(std::abs(qa - qb) <= 1e-10);
    }

    TEST_CASE("variational equation matches finite differences in lambda") {
        const double delta = 1e-5;
        for (double t : {0.1, 1.0, 5.0}) {
            const double lp = 0.5;
            const double up = orbit({lp + kPi * delta, 0.0}, {t}).at(t).q;
            const double dn = orbit({lp - kPi * delta, 0.0}, {t}).at(t).q;
            const double chi = orbit({lp, 0.0}, {t}).at(t).chi;
            CHECK(std::abs((up - dn) / (2 * delta) - chi) <= 1e-6 * std::max(1.0, std::abs(chi)));
        }
    }

    TEST_CASE("Hamiltonian and Painleve-III coordinates") {
        CHECK(hamiltonian(0.0, 0.0, 1.0) == 0.0);
        const Trajectory traj = solve_family({0.5, 0.0});
        const TrajectoryNode n = traj.at(10.0);
        CHECK(std::abs(hamiltonian(n.q, n.p, 10.0)) <= 1e-9);

        const PiiiState zero = to_piii(1.0, 0.0, 0.0, 0.3);
        CHECK(zero.v1 == doctest::Approx(-0.8));
        CHECK(zero.h1 == doctest::Approx(0.0));
        CHECK(zero.h2 == doctest::Approx(0.0));

        const PiiiState st = to_piii(1.0, 0.4, 0.2, 0.25);
        CHECK(std::abs(st.h1 - piii_h_eliminated(1, st.u, st.du_dx, st.x, 0.25)) <= 1e-12);
        CHECK(std::abs(st.h2 - piii_h_eliminated(2, st.u, st.du_dx, st.x, 0.25)) <= 1e-12);
        CHECK(std::abs(st.h1 - piii_h1(st.u, st.v1, st.x, 0.25)) <= 1e-15);
    }

    TEST_CASE("small-t slope and constant") {
        const Trajectory traj = orbit({0.5, 0.0}, {1e-4, 1.01e-4}, precise_config());
        const double sg = sigma_of_lambda(0.5);
        const double slope = (traj.at(1.01e-4).q - traj.at(1e-4).q) / std::log(1.01);
        CHECK(std::abs(slope + sg) <= 1e-3);
        CHECK(std::abs(traj.at(1e-4).q + sg * std::log(1e-4) + std::log(b_coeff(sg, 0.0))) <= 2e-3);
    }

    TEST_CASE("nu -> 0 continuity") {
        const Trajectory a = solve_family({0.5, 0.0});
        const Trajectory b = solve_family({0.5, 1e-6});
        double worst = 0.0;
        for (double t : {0.01, 0.1, 1.0, 10.0}) worst = std::max(worst, std::abs(a.at(t).q - b.at(t).q));
        CHECK(worst <= 1e-4);
    }

    TEST_CASE("overflow is reported as a solver error") {
        SolverConfig cfg;
        cfg.t_min = 1e-200;
        CHECK_THROWS_AS(solve_family({1.0, 0.0}, cfg), SolverError);
    }
}
