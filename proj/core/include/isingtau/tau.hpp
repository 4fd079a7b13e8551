#pragma once

// Tau-function routes for the BMTW family.
//
//   hamiltonian : exp[1/2 int_t^inf H ds] * {sinh, cosh}(q/2)
//   action      : exp[-(t/2) H(q,p,t) - 1/2 int_0^lambda p dq/dlambda' dlambda'] * {sinh, cosh}(q/2)
//   nu_product  : the nu-generalised exponent, either directly or as the
//                 combination of the two Painleve-III Hamiltonian integrals
//   fredholm    : det(1 - K_t) at lambda pi = 1 (see fredholm.hpp)

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isingtau/solver.hpp"

namespace isingtau {

enum class TauRoute { hamiltonian, action, nu_product, fredholm, asymptotic_small_t, asymptotic_large_t };

std::string_view to_string(Branch b);
std::string_view to_string(TauRoute r);
Branch parse_branch(std::string_view s);

struct TauValue {
    double t = 0.0;
    BmtwParams params;
    Branch branch = Branch::minus;
    TauRoute route = TauRoute::hamiltonian;
    double value = 0.0;
    double est_error = 0.0;
};

/// {sinh, cosh}(q/2) for the branch.
double branch_factor(Branch branch, double q);

/// Hamiltonian route from a solved orbit. t must lie in the trajectory range.
/// est_error is the tolerance-derived bound value * (rel_tol (1 + |int H|) + |tail_H|).
TauValue tau_hamiltonian(const Trajectory& traj, double t, Branch branch);

/// Hamiltonian route with est_error from a t_seed-doubling re-solve.
TauValue tau_hamiltonian(double t, const BmtwParams& params, Branch branch, const SolverConfig& config = {});

/// Options for quadratures over lambda' in [0, lambda].
struct LambdaQuadrature {
    int nodes = 16;          // n; the estimate compares n against 2n nodes
    unsigned threads = 1;    // node solves are independent
    SolverConfig solver{};   // t_min and sample_points are set per call
};

struct ActionValue {
    double t = 0.0;
    double value = 0.0;      // 2n-node result
    double est_error = 0.0;  // |S(2n) - S(n)|
};

/// S(t, lambda) = -int_0^lambda p dq/dlambda' dlambda' at each t in ts (one solve per node).
/// lambda' = lambda sin(pi w / 2) with Gauss-Legendre in w.
std::vector<ActionValue> action_S(std::span<const double> ts, const BmtwParams& params,
                                  const LambdaQuadrature& quad = {});
ActionValue action_S(double t, const BmtwParams& params, int n_nodes = 16);

/// Action-integral route; requires nu = 0.
TauValue tau_action(double t, const BmtwParams& params, Branch branch, const LambdaQuadrature& quad = {});

/// |int_t^inf H ds - (-t H(q,p,t) + S(t, lambda))|; requires nu = 0.
double action_identity_residual(double t, const BmtwParams& params, const LambdaQuadrature& quad = {});

/// Residuals of the action identity at several t, sharing the lambda' solves.
struct ActionIdentity {
    double t = 0.0;
    double hamiltonian_integral = 0.0;  // int_t^inf H ds
    double boundary_term = 0.0;         // -t H(q, p, t)
    double action = 0.0;                // S(t, lambda)
    double action_direct = 0.0;         // S from the single-orbit accumulator
    double action_est_error = 0.0;
    double residual = 0.0;
    double q = 0.0;
    double p = 0.0;
};
std::vector<ActionIdentity> action_identity(std::span<const double> ts, const BmtwParams& params,
                                            const LambdaQuadrature& quad = {});

enum class NuRoute { g1_direct, g10_product };

/// Exponent of the nu-generalised tau-function (without the sinh/cosh factor).
double nu_exponent(const Trajectory& traj, const TrajectoryNode& node, NuRoute route);

TauValue tau_nu(const Trajectory& traj, double t, Branch branch, NuRoute route);
TauValue tau_nu(double t, const BmtwParams& params, Branch branch, NuRoute route, const SolverConfig& config = {});

/// Terms of the Painleve-III action identity at x = t/2:
///   int_x^inf H_j dx' + x H_j(x) + L_j - S_j = 0.
struct NuActionTerms {
    int j = 1;
    double x = 0.0;
    double h_integral = 0.0;
    double boundary_term = 0.0;  // x H_j(x)
    double l_term = 0.0;
    double action = 0.0;         // S_j = -int_0^lambda v_j du/dlambda' dlambda'
    double action_est_error = 0.0;
    double residual = 0.0;
};
std::vector<NuActionTerms> nu_action_identity(double t, const BmtwParams& params, const LambdaQuadrature& quad = {});
double nu_action_residual(double t, const BmtwParams& params, int j, const LambdaQuadrature& quad = {});

}  // namespace isingtau
