#include "isingtau/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <string>

#include "isingtau/constants.hpp"
#include "isingtau/dopri5.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/quadrature.hpp"
#include "isingtau/specfn.hpp"

namespace isingtau {

double BmtwParams::lambda() const { return lambda_pi / kPi; }

void BmtwParams::validate() const {
    if (!(lambda_pi >= 0.0 && lambda_pi <= 1.0)) {
        std::ostringstream os;
        os << "lambda_pi must lie in [0, 1], got " << lambda_pi;
        throw DomainError(os.str());
    }
    if (!(nu > -0.5 && nu <= 4.0)) {
        std::ostringstream os;
        os << "nu must lie in (-1/2, 4], got " << nu;
        throw DomainError(os.str());
    }
}

void SolverConfig::validate() const {
    if (!(t_min > 0.0 && t_min < log_switch && log_switch < t_seed))
        throw DomainError("solver config requires 0 < t_min < log_switch < t_seed");
    if (!(rel_tol > 0.0 && abs_tol > 0.0)) throw DomainError("solver tolerances must be positive");
    for (double t : sample_points)
        if (!(t >= t_min && t <= t_seed)) {
            std::ostringstream os;
            os << "sample point " << t << " outside [t_min, t_seed]";
            throw DomainError(os.str());
        }
}

double hamiltonian(double q, double p, double t) {
    const double sh = std::sinh(q);
    return 0.5 * t * sh * sh - p * p / (2.0 * t);
}

double piii_h1(double u, double v1, double x, double nu) {
    const double c = 2.0 * nu + 1.0;
    const double um1 = u * u - 1.0;
    return (u * u * v1 * v1 - (x * um1 - c * u) * v1 - c * x * u) / x + c * c / (4.0 * x) + c;
}

double piii_h2(double u, double v2, double x, double nu) {
    const double c = 2.0 * nu - 1.0;
    const double um1 = u * u - 1.0;
    return (u * u * v2 * v2 + (x * um1 - c * u) * v2 - c * x * u) / x + c * c / (4.0 * x) + c;
}

double piii_h_eliminated(int j, double u, double du_dx, double x, double nu) {
    const double c = j == 1 ? 2.0 * nu + 1.0 : 2.0 * nu - 1.0;
    const double one_minus_u2 = 1.0 - u * u;
    return x / (4.0 * u * u) * (du_dx * du_dx - one_minus_u2 * one_minus_u2) -
           c / (2.0 * u) * (1.0 - u) * (1.0 - u);
}

namespace {

constexpr std::size_t kDim = 9;
using State = std::array<double, kDim>;
enum Index : std::size_t { Q, P, CHI, CHIP, ACC_H, ACC_ACTION, ACC_AUX, ACC_H1, ACC_H2 };

struct Momenta {
    double u, v1, v2;
};

// v_j from the momentum relations, written so that u = 1, p = 0 gives the exact limits.
Momenta momenta(double t, double q, double p, double nu) {
    const double x = 0.5 * t;
    const double u = std::exp(-q);
    const double um1 = std::expm1(-2.0 * q);  // u^2 - 1
    const double c1 = 2.0 * nu + 1.0, c2 = 2.0 * nu - 1.0;
    const double v1 = (p * u + x * um1 - c1 * u) / (2.0 * u * u);
    const double v2 = (p * u - x * um1 + c2 * u) / (2.0 * u * u);
    return {u, v1, v2};
}

// Right-hand side in t (log_mode = false) or in s = ln t (log_mode = true).
struct FamilyRhs {
    double nu;
    bool log_mode;

    void operator()(double var, const State& y, State& dy) const {
        const double t = log_mode ? std::exp(var) : var;
        const double q = y[Q], p = y[P];
        const double sh = std::sinh(q), ch = std::cosh(q);
        const double sh_half = std::sinh(0.5 * q);
        const double H = 0.5 * t * sh * sh - p * p / (2.0 * t);
        const Momenta m = momenta(t, q, p, nu);
        const double x = 0.5 * t;

        dy[Q] = -p / t;
        dy[P] = -t * sh * ch - 2.0 * nu * sh;
        dy[CHI] = -y[CHIP] / t;
        dy[CHIP] = -(t * (ch * ch + sh * sh) + 2.0 * nu * ch) * y[CHI];
        dy[ACC_H] = -H;
        dy[ACC_ACTION] = p * p / (2.0 * t) + 0.5 * t * sh * sh;
        dy[ACC_AUX] = -2.0 * sh_half * sh_half;
        dy[ACC_H1] = -0.5 * piii_h1(m.u, m.v1, x, nu);
        dy[ACC_H2] = -0.5 * piii_h2(m.u, m.v2, x, nu);
        if (log_mode)
            for (double& d : dy) d *= t;
    }
};

TrajectoryNode to_node(double t, const State& y) {
    return {t, y[Q], y[P], y[CHI], y[CHIP], y[ACC_H], y[ACC_ACTION], y[ACC_AUX], y[ACC_H1], y[ACC_H2]};
}

State to_state(const TrajectoryNode& n) {
    return {n.q, n.p, n.chi, n.chi_p, n.acc_H, n.acc_action, n.acc_aux, n.acc_h1, n.acc_h2};
}

// Integrates from t_from down to t_to (t_to < t_from) in a single mode. `stops_t`
// are descending t values strictly inside (t_to, t_from); every accepted step is
// passed to `emit` with t snapped to the requested value on landings.
// Absolute tolerances per component. The orbit starts at the size of the seed,
// so abs_tol is capped at rel_tol times the seed magnitude of each component.
std::vector<double> component_atol(const SolverConfig& cfg, const State& seed) {
    std::vector<double> atol(kDim, cfg.abs_tol);
    auto cap = [&](std::size_t i, double scale) {
        if (scale > 0.0) atol[i] = std::min(cfg.abs_tol, cfg.rel_tol * scale);
    };
    cap(Q, std::abs(seed[Q]));
    cap(P, std::abs(seed[P]));
    cap(CHI, std::abs(seed[CHI]));
    cap(CHIP, std::abs(seed[CHIP]));
    for (std::size_t i : {ACC_H, ACC_ACTION, ACC_AUX}) cap(i, seed[Q] * seed[Q]);
    // the polynomial Hamiltonians cancel O(1) constants, leaving roundoff of order eps * x
    atol[ACC_H1] = atol[ACC_H2] = std::max(cfg.abs_tol, 1e-13);
    return atol;
}

State run_segment(const BmtwParams& params, const SolverConfig& cfg, const std::vector<double>& atol,
                  bool log_mode, double t_from, const State& y0, double t_to, const std::vector<double>& stops_t,
                  const std::function<void(double, const State&)>& emit) {
    auto to_var = [&](double t) { return log_mode ? std::log(t) : t; };
    std::vector<double> stops_var;
    stops_var.reserve(stops_t.size());
    for (double t : stops_t) stops_var.push_back(to_var(t));

    ode::Dopri5<kDim> stepper({cfg.rel_tol, cfg.abs_tol, atol, 0.0, 2'000'000});
    const FamilyRhs rhs{params.nu, log_mode};
    const double var_end = to_var(t_to);
    std::size_t next = 0;
    try {
        return stepper.integrate(rhs, to_var(t_from), y0, var_end, stops_var, [&](double var, const State& y) {
            for (const double v : y)
                if (!std::isfinite(v)) throw SolverError("non-finite state", var);
            double t = log_mode ? std::exp(var) : var;
            while (next < stops_var.size() && var < stops_var[next]) ++next;
            if (next < stops_var.size() && var == stops_var[next]) t = stops_t[next++];
            if (var == var_end) t = t_to;
            emit(t, y);
        });
    } catch (const SolverError& e) {
        const double where = log_mode ? std::exp(e.where()) : e.where();
        std::ostringstream os;
        os << "solve_family(lambda_pi=" << params.lambda_pi << ", nu=" << params.nu << "): " << e.what()
           << " [t = " << where << "]";
        if (std::string(e.what()).find("non-finite") != std::string::npos)
            os << "; sinh(2q) overflow, increase t_min";
        throw SolverError(os.str(), where);
    }
}

}  // namespace

SeedState seed_at_infinity(const BmtwParams& params, double t_seed) {
    params.validate();
    if (!(t_seed > 0.0)) throw DomainError("seed_at_infinity: t_seed must be positive");
    const double lam = params.lambda();
    const auto bc = specfn::bc_integral(t_seed, params.nu);
    SeedState seed;
    seed.q0 = 2.0 * lam * bc.value;
    seed.p0 = -t_seed * 2.0 * lam * bc.derivative;
    seed.chi0 = 2.0 * bc.value;
    seed.chip0 = -t_seed * 2.0 * bc.derivative;
    if (seed.q0 > 1e-5) {
        std::ostringstream os;
        os << "seed point too small: 2 lambda I(t_seed) = " << seed.q0 << " at t_seed = " << t_seed
           << "; use a larger t_seed";
        throw SolverError(os.str(), t_seed);
    }
    if (lam == 0.0) return seed;

    // Linearised orbit on [t_seed, t_seed + 24]; the integrands decay like e^{-2s}.
    static const quad::Rule rule = quad::gauss_legendre(16);
    constexpr int kPanels = 6;
    constexpr double kWidth = 4.0;
    const double c1 = 2.0 * params.nu + 1.0, c2 = 2.0 * params.nu - 1.0;
    TailIntegrals& tail = seed.tail;
    for (int k = 0; k < kPanels; ++k) {
        const double a = t_seed + k * kWidth, mid = a + 0.5 * kWidth;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double s = mid + 0.5 * kWidth * rule.nodes[i];
            const double w = 0.5 * kWidth * rule.weights[i];
            const auto b = specfn::bc_integral(s, params.nu);
            const double q = 2.0 * lam * b.value;
            const double p = -s * 2.0 * lam * b.derivative;
            const double sh = std::sinh(q), sh_half = std::sinh(0.5 * q);
            tail.H += w * (0.5 * s * sh * sh - p * p / (2.0 * s));
            tail.action += w * (-p * p / (2.0 * s) - 0.5 * s * sh * sh);
            tail.aux += w * 2.0 * sh_half * sh_half;
        }
    }
    // H_j = -H - 2 c_j sinh^2(q/2) and dx = ds/2
    tail.h1 = -0.5 * tail.H - 0.5 * c1 * tail.aux;
    tail.h2 = -0.5 * tail.H - 0.5 * c2 * tail.aux;
    return seed;
}

Trajectory::Trajectory(BmtwParams params, SolverConfig config, std::vector<TrajectoryNode> nodes,
                       TailIntegrals tail)
    : params_(params), config_(std::move(config)), nodes_(std::move(nodes)), tail_(tail) {
    if (nodes_.empty()) throw SolverError("empty trajectory");
}

TrajectoryNode Trajectory::at(double t) const {
    if (!(t >= t_min() && t <= t_seed())) {
        std::ostringstream os;
        os << "t = " << t << " outside trajectory range [" << t_min() << ", " << t_seed() << "]";
        throw RangeError(os.str());
    }
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                                     [](const TrajectoryNode& n, double v) { return n.t < v; });
    if (it->t == t) return *it;
    const TrajectoryNode& start = *it;
    const bool log_mode = start.t <= config_.log_switch;
    TrajectoryNode out;
    const State y = run_segment(params_, config_, component_atol(config_, to_state(nodes_.back())), log_mode,
                                start.t, to_state(start), t, {},
                                [](double, const State&) {});
    out = to_node(t, y);
    return out;
}

Trajectory solve_family(const BmtwParams& params, const SolverConfig& config) {
    params.validate();
    config.validate();
    const SeedState seed = seed_at_infinity(params, config.t_seed);

    std::vector<double> samples;
    for (double t : config.sample_points)
        if (t > config.t_min && t < config.t_seed && t != config.log_switch) samples.push_back(t);
    std::sort(samples.begin(), samples.end(), std::greater<>());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    std::vector<double> upper, lower;
    for (double t : samples) (t > config.log_switch ? upper : lower).push_back(t);

    std::vector<TrajectoryNode> nodes;
    nodes.reserve(4096);
    State y{seed.q0, seed.p0, seed.chi0, seed.chip0, 0.0, 0.0, 0.0, 0.0, 0.0};
    nodes.push_back(to_node(config.t_seed, y));
    auto emit = [&](double t, const State& s) { nodes.push_back(to_node(t, s)); };

    const std::vector<double> atol = component_atol(config, y);
    y = run_segment(params, config, atol, false, config.t_seed, y, config.log_switch, upper, emit);
    y = run_segment(params, config, atol, true, config.log_switch, y, config.t_min, lower, emit);

    std::reverse(nodes.begin(), nodes.end());
    return Trajectory(params, config, std::move(nodes), seed.tail);
}

PiiiState to_piii(double t, double q, double p, double nu) {
    const Momenta m = momenta(t, q, p, nu);
    PiiiState s;
    s.x = 0.5 * t;
    s.u = m.u;
    s.du_dx = 2.0 * p * m.u / t;
    s.v1 = m.v1;
    s.v2 = m.v2;
    s.h1 = piii_h1(m.u, m.v1, s.x, nu);
    s.h2 = piii_h2(m.u, m.v2, s.x, nu);
    if (!(std::isfinite(s.u) && s.u > 0.0 && std::isfinite(s.v1) && std::isfinite(s.v2))) {
        std::ostringstream os;
        os << "to_piii: u = e^{-q} out of range at t = " << t << " (q = " << q << ")";
        throw SolverError(os.str(), t);
    }
    return s;
}

PiiiState to_piii(const Trajectory& traj, std::size_t node) {
    const TrajectoryNode& n = traj.node(node);
    return to_piii(n.t, n.q, n.p, traj.params().nu);
}

}  // namespace isingtau
