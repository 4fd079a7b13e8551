#pragma once

// Backward solver for the one-parameter family of the (nu-modified) radial
// sinh-Gordon equation
//
//     q'' + q'/t = 1/2 sinh 2q + (2 nu / t) sinh q,    q ~ 2 lambda I(t, nu), t -> inf,
//
// written as the Hamiltonian system dq/dt = -p/t, dp/dt = -(t/2) sinh 2q - 2 nu sinh q.
// Alongside (q, p) the solver carries the variational pair (chi, chi_p) =
// d(q, p)/d lambda and a set of running integrals over [t, t_seed].

#include <cstddef>
#include <vector>

namespace isingtau {

/// Family coordinates: lambda_pi = lambda * pi in [0, 1], nu > -1/2.
struct BmtwParams {
    double lambda_pi = 0.0;
    double nu = 0.0;

    double lambda() const;
    /// Throws DomainError unless lambda_pi in [0, 1] and nu in (-1/2, 4].
    void validate() const;
};

enum class Branch { plus, minus };

struct SolverConfig {
    double t_seed = 14.0;
    double t_min = 1e-4;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double log_switch = 0.5;  // below this t the integration variable is ln t
    /// Extra t values in [t_min, t_seed] that become exact grid nodes.
    std::vector<double> sample_points;

    void validate() const;
};

/// Integrals over [t_seed, inf) from the linearised boundary solution.
struct TailIntegrals {
    double H = 0.0;       // int H ds
    double action = 0.0;  // int (p q' - H) ds
    double aux = 0.0;     // int u^{-1} (1-u)^2 dx,  x = s/2
    double h1 = 0.0;      // int H_1 dx
    double h2 = 0.0;      // int H_2 dx
};

/// One grid node of a solved orbit. Accumulators hold integrals over [t, t_seed].
struct TrajectoryNode {
    double t = 0.0;
    double q = 0.0;
    double p = 0.0;      // -t dq/dt
    double chi = 0.0;    // dq/d lambda
    double chi_p = 0.0;  // -t dchi/dt
    double acc_H = 0.0;
    double acc_action = 0.0;
    double acc_aux = 0.0;
    double acc_h1 = 0.0;
    double acc_h2 = 0.0;
};

struct SeedState {
    double q0 = 0.0;
    double p0 = 0.0;
    double chi0 = 0.0;
    double chip0 = 0.0;
    TailIntegrals tail;
};

/// Boundary data at t_seed from q ~ 2 lambda I(t, nu). Throws SolverError when
/// 2 lambda I(t_seed, nu) > 1e-5 (seed point too small).
SeedState seed_at_infinity(const BmtwParams& params, double t_seed);

class Trajectory {
public:
    Trajectory(BmtwParams params, SolverConfig config, std::vector<TrajectoryNode> nodes, TailIntegrals tail);

    const BmtwParams& params() const { return params_; }
    const SolverConfig& config() const { return config_; }
    const TailIntegrals& tail() const { return tail_; }

    /// Nodes ordered by increasing t; the last one is t_seed.
    const std::vector<TrajectoryNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    const TrajectoryNode& node(std::size_t i) const { return nodes_.at(i); }
    double t_min() const { return nodes_.front().t; }
    double t_seed() const { return nodes_.back().t; }

    /// State at an arbitrary t in [t_min, t_seed]. Grid points are returned as
    /// stored; other points are obtained by re-integrating from the nearest
    /// node above t with the trajectory's tolerances. Throws RangeError.
    TrajectoryNode at(double t) const;

private:
    BmtwParams params_;
    SolverConfig config_;
    std::vector<TrajectoryNode> nodes_;
    TailIntegrals tail_;
};

/// Solves the family backwards from t_seed to t_min.
Trajectory solve_family(const BmtwParams& params, const SolverConfig& config = {});

/// H(q, p, t) = (t/2) sinh^2 q - p^2 / (2t).
double hamiltonian(double q, double p, double t);

/// Painleve-III coordinates at x = t/2 with u = e^{-q}.
struct PiiiState {
    double x = 0.0;
    double u = 0.0;
    double du_dx = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
};

/// Polynomial Hamiltonians H_1(u, v1, x, nu), H_2(u, v2, x, nu).
double piii_h1(double u, double v1, double x, double nu);
double piii_h2(double u, double v2, double x, double nu);

/// H_j with v_j eliminated: (x/4u^2)[u'^2 - (1-u^2)^2] - ((2 nu +- 1)/2u)(1-u)^2.
double piii_h_eliminated(int j, double u, double du_dx, double x, double nu);

PiiiState to_piii(double t, double q, double p, double nu);
PiiiState to_piii(const Trajectory& traj, std::size_t node);

}  // namespace isingtau
