#include "isingtau/tau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/parallel.hpp"
#include "isingtau/quadrature.hpp"

namespace isingtau {

std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

std::string_view to_string(TauRoute r) {
    switch (r) {
        case TauRoute::hamiltonian: return "hamiltonian";
        case TauRoute::action: return "action";
        case TauRoute::nu_product: return "nu_product";
        case TauRoute::fredholm: return "fredholm";
        case TauRoute::asymptotic_small_t: return "asymptotic_small_t";
        case TauRoute::asymptotic_large_t: return "asymptotic_large_t";
    }
    return "unknown";
}

Branch parse_branch(std::string_view s) {
    if (s == "plus" || s == "+") return Branch::plus;
    if (s == "minus" || s == "-") return Branch::minus;
    throw DomainError("branch must be 'plus' or 'minus'");
}

double branch_factor(Branch branch, double q) {
    return branch == Branch::plus ? std::sinh(0.5 * q) : std::cosh(0.5 * q);
}

TauValue tau_hamiltonian(const Trajectory& traj, double t, Branch branch) {
    const TrajectoryNode n = traj.at(t);
    const double integral = n.acc_H + traj.tail().H;
    TauValue out;
    out.t = t;
    out.params = traj.params();
    out.branch = branch;
    out.route = TauRoute::hamiltonian;
    out.value = std::exp(0.5 * integral) * branch_factor(branch, n.q);
    out.est_error = std::abs(out.value) * (traj.config().rel_tol * (1.0 + std::abs(integral)) + std::abs(traj.tail().H));
    return out;
}

TauValue tau_hamiltonian(double t, const BmtwParams& params, Branch branch, const SolverConfig& config) {
    SolverConfig cfg = config;
    if (t < cfg.t_min) cfg.t_min = t;
    cfg.sample_points.push_back(t);
    TauValue v = tau_hamiltonian(solve_family(params, cfg), t, branch);
    cfg.t_seed *= 2.0;
    const TauValue refined = tau_hamiltonian(solve_family(params, cfg), t, branch);
    v.est_error = std::abs(refined.value - v.value);
    return v;
}

namespace {

SolverConfig config_for(std::span<const double> ts, SolverConfig cfg) {
    if (ts.empty()) throw DomainError("no evaluation points");
    const double t_low = *std::min_element(ts.begin(), ts.end());
    const double t_high = *std::max_element(ts.begin(), ts.end());
    if (!(t_low > 0.0) || !(t_high < cfg.t_seed))
        throw DomainError("evaluation points must lie in (0, t_seed)");
    cfg.t_min = std::min(t_low, 0.5 * cfg.log_switch);
    cfg.sample_points.assign(ts.begin(), ts.end());
    return cfg;
}

// Quadrature over lambda' = lambda sin(pi w / 2), w in [0, 1], of an integrand
// returning K values per node. Result[i][k] = {n-node sum, 2n-node sum}.
template <std::size_t K, class Integrand>
std::vector<std::array<std::array<double, 2>, K>> lambda_quadrature(std::span<const double> ts,
                                                                      const BmtwParams& params,
                                                                      const LambdaQuadrature& quad,
                                                                      Integrand&& integrand) {
    if (quad.nodes < 4) throw DomainError("lambda quadrature needs at least 4 nodes");
    const SolverConfig cfg = config_for(ts, quad.solver);
    const double lam = params.lambda();

    struct Node {
        int level;
        double weight;
        double lambda_pi;
    };
    std::vector<Node> nodes;
    for (int level = 0; level < 2; ++level) {
        const quad::Rule rule = quad::gauss_legendre(quad.nodes << level, 0.0, 1.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double arg = 0.5 * kPi * rule.nodes[i];
            const double jac = lam * 0.5 * kPi * std::cos(arg);
            nodes.push_back({level, rule.weights[i] * jac, params.lambda_pi * std::sin(arg)});
        }
    }

    const auto values = parallel_map(nodes.size(), quad.threads, [&](std::size_t i) {
        const BmtwParams node_params{nodes[i].lambda_pi, params.nu};
        const Trajectory traj = solve_family(node_params, cfg);
        std::vector<std::array<double, K>> per_t;
        per_t.reserve(ts.size());
        for (double t : ts) per_t.push_back(integrand(traj.at(t), node_params));
        return per_t;
    });

    std::vector<std::array<std::array<double, 2>, K>> out(ts.size());
    for (auto& row : out)
        for (auto& cell : row) cell = {0.0, 0.0};
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            for (std::size_t k = 0; k < K; ++k) out[j][k][nodes[i].level] += nodes[i].weight * values[i][j][k];
    return out;
}

void require_sinh_gordon(const BmtwParams& params, const char* what) {
    if (params.nu != 0.0) {
        std::ostringstream os;
        os << what << " is defined for nu = 0 only";
        throw DomainError(os.str());
    }
}

}  // namespace

std::vector<ActionValue> action_S(std::span<const double> ts, const BmtwParams& params, const LambdaQuadrature& quad) {
    params.validate();
    std::vector<ActionValue> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) out[i].t = ts[i];
    if (params.lambda_pi == 0.0) return out;
    const auto sums = lambda_quadrature<1>(ts, params, quad, [](const TrajectoryNode& n, const BmtwParams&) {
        return std::array<double, 1>{-n.p * n.chi};
    });
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out[i].value = sums[i][0][1];
        out[i].est_error = std::abs(sums[i][0][1] - sums[i][0][0]);
    }
    return out;
}

ActionValue action_S(double t, const BmtwParams& params, int n_nodes) {
    LambdaQuadrature quad;
    quad.nodes = n_nodes;
    const double ts[] = {t};
    return action_S(ts, params, quad).front();
}

std::vector<ActionIdentity> action_identity(std::span<const double> ts, const BmtwParams& params,
                                            const LambdaQuadrature& quad) {
    require_sinh_gordon(params, "the action identity");
    params.validate();
    const Trajectory traj = solve_family(params, config_for(ts, quad.solver));
    const auto actions = action_S(ts, params, quad);
    std::vector<ActionIdentity> out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const TrajectoryNode n = traj.at(ts[i]);
        ActionIdentity r;
        r.t = ts[i];
        r.q = n.q;
        r.p = n.p;
        r.hamiltonian_integral = n.acc_H + traj.tail().H;
        r.boundary_term = -ts[i] * hamiltonian(n.q, n.p, ts[i]);
        r.action = actions[i].value;
        r.action_est_error = actions[i].est_error;
        r.action_direct = n.acc_action + traj.tail().action;
        r.residual = std::abs(r.hamiltonian_integral - (r.boundary_term + r.action));
        out.push_back(r);
    }
    return out;
}

double action_identity_residual(double t, const BmtwParams& params, const LambdaQuadrature& quad) {
    const double ts[] = {t};
    return action_identity(ts, params, quad).front().residual;
}

TauValue tau_action(double t, const BmtwParams& params, Branch branch, const LambdaQuadrature& quad) {
    require_sinh_gordon(params, "the action formula");
    params.validate();
    const double ts[] = {t};
    TauValue out;
    out.t = t;
    out.params = params;
    out.branch = branch;
    out.route = TauRoute::action;
    if (params.lambda_pi == 0.0) {
        out.value = branch_factor(branch, 0.0);
        return out;
    }
    const Trajectory traj = solve_family(params, config_for(ts, quad.solver));
    const TrajectoryNode n = traj.at(t);
    const ActionValue s = action_S(ts, params, quad).front();
    const double exponent = -0.5 * t * hamiltonian(n.q, n.p, t) + 0.5 * s.value;
    out.value = std::exp(exponent) * branch_factor(branch, n.q);
    out.est_error = std::abs(out.value) * (0.5 * s.est_error + quad.solver.rel_tol * (1.0 + std::abs(exponent)));
    return out;
}

double nu_exponent(const Trajectory& traj, const TrajectoryNode& n, NuRoute route) {
    const double nu = traj.params().nu;
    const TailIntegrals& tail = traj.tail();
    if (route == NuRoute::g1_direct) return 0.5 * (n.acc_H + tail.H) + 0.5 * nu * (n.acc_aux + tail.aux);
    return -(0.5 * (1.0 - nu) * (n.acc_h1 + tail.h1) + 0.5 * (1.0 + nu) * (n.acc_h2 + tail.h2));
}

TauValue tau_nu(const Trajectory& traj, double t, Branch branch, NuRoute route) {
    const TrajectoryNode n = traj.at(t);
    const double exponent = nu_exponent(traj, n, route);
    TauValue out;
    out.t = t;
    out.params = traj.params();
    out.branch = branch;
    out.route = TauRoute::nu_product;
    out.value = std::exp(exponent) * branch_factor(branch, n.q);
    out.est_error = std::abs(out.value) * traj.config().rel_tol * (1.0 + std::abs(exponent));
    return out;
}

TauValue tau_nu(double t, const BmtwParams& params, Branch branch, NuRoute route, const SolverConfig& config) {
    SolverConfig cfg = config;
    if (t < cfg.t_min) cfg.t_min = t;
    cfg.sample_points.push_back(t);
    return tau_nu(solve_family(params, cfg), t, branch, route);
}

std::vector<NuActionTerms> nu_action_identity(double t, const BmtwParams& params, const LambdaQuadrature& quad) {
    params.validate();
    const double ts[] = {t};
    const double nu = params.nu;
    const double c1 = 2.0 * nu + 1.0, c2 = 2.0 * nu - 1.0;
    const Trajectory traj = solve_family(params, config_for(ts, quad.solver));
    const TrajectoryNode n = traj.at(t);
    const PiiiState st = to_piii(t, n.q, n.p, nu);
    const double aux = n.acc_aux + traj.tail().aux;
    const double ln_u = -n.q;

    std::array<std::array<double, 2>, 2> actions{};
    if (params.lambda_pi != 0.0) {
        // S_j = -int v_j du/dlambda' dlambda' with du/dlambda = -u chi
        const auto sums = lambda_quadrature<2>(ts, params, quad, [t](const TrajectoryNode& m, const BmtwParams& p) {
            const PiiiState s = to_piii(t, m.q, m.p, p.nu);
            return std::array<double, 2>{s.v1 * s.u * m.chi, s.v2 * s.u * m.chi};
        });
        actions = sums[0];
    }

    std::vector<NuActionTerms> out(2);
    for (int j = 1; j <= 2; ++j) {
        NuActionTerms& r = out[j - 1];
        r.j = j;
        r.x = st.x;
        r.h_integral = j == 1 ? n.acc_h1 + traj.tail().h1 : n.acc_h2 + traj.tail().h2;
        r.boundary_term = st.x * (j == 1 ? st.h1 : st.h2);
        r.l_term = j == 1 ? 0.5 * c1 * ln_u + 0.5 * c1 * aux : -0.5 * c2 * ln_u + 0.5 * c2 * aux;
        r.action = actions[j - 1][1];
        r.action_est_error = std::abs(actions[j - 1][1] - actions[j - 1][0]);
        r.residual = std::abs(r.h_integral + r.boundary_term + r.l_term - r.action);
    }
    return out;
}

double nu_action_residual(double t, const BmtwParams& params, int j, const LambdaQuadrature& quad) {
    if (j != 1 && j != 2) throw DomainError("nu_action_residual: j must be 1 or 2");
    return nu_action_identity(t, params, quad)[j - 1].residual;
}

}  // namespace isingtau
