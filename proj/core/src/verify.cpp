#include "isingtau/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "isingtau/asymptotics.hpp"
#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/fredholm.hpp"
#include "isingtau/specfn.hpp"
#include "isingtau/tau.hpp"

namespace isingtau {

namespace {

std::string fmt(const char* pattern, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

std::string fmt(const char* pattern, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::string fmt(const char* pattern, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Adds a check that passes when ratio lies within `rel` of `expected`.
void add_ratio(VerificationReport& r, std::string name, double ratio, double expected, double rel) {
    r.add(std::move(name), ratio, expected, std::abs(ratio / expected - 1.0), rel);
}

// Largest increase of |values| along the sequence (0 when strictly non-increasing).
double max_increase(const std::vector<double>& values) {
    double worst = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i)
        worst = std::max(worst, std::abs(values[i]) - std::abs(values[i - 1]));
    return worst;
}

Trajectory solve_at(const BmtwParams& params, std::vector<double> ts, SolverConfig cfg = {}) {
    cfg.t_min = std::min(cfg.t_min, *std::min_element(ts.begin(), ts.end()));
    cfg.sample_points = std::move(ts);
    return solve_family(params, cfg);
}

LambdaQuadrature quadrature(const VerifyOptions& o) {
    LambdaQuadrature q;
    q.threads = o.threads;
    return q;
}

VerificationReport suite_specfn(const VerifyOptions& o) {
    const double s = o.tol_scale;
    VerificationReport r;
    r.suite = "specfn";
    r.add_abs("specfn.gamma_half", std::exp(specfn::ln_gamma(0.5)), kConstants.sqrt_pi, 1e-13 * s);
    r.add_abs("specfn.barnes_g_half", 2.0 * specfn::ln_barnes_g(0.5),
              3.0 * kConstants.zeta_prime_minus_one - 0.5 * kConstants.ln_pi + kConstants.ln_two / 12.0, 1e-11 * s);
    for (double z : {0.25, 0.5, 1.0})
        r.add(fmt("specfn.barnes_integral.z=%g", z), 0.0, 0.0, specfn::barnes_integral_residual(z), 1e-10 * s);
    for (int i = 0; i < 20; ++i) {
        const double t = 0.1 * std::pow(300.0, i / 19.0);
        const double bc = specfn::bc_integral(t, 0.0, false).value;
        r.add_rel(fmt("specfn.bc_integral_vs_k0.t=%.6g", t), bc, specfn::bessel_k(0, t), 1e-10 * s);
    }
    for (double t : {0.5, 3.0}) {
        const double k1 = specfn::bessel_k(1, t);
        const double minus_dk0 = -specfn::bc_integral(t, 0.0).derivative;
        r.add_rel(fmt("specfn.bc_derivative_vs_k1.t=%g", t), minus_dk0, k1, 1e-10 * s);
    }
    r.add_abs("specfn.digamma_one", specfn::digamma(1.0), -kConstants.euler_gamma, 1e-14 * s);
    return r;
}

VerificationReport suite_constants(const VerifyOptions& o) {
    const double s = o.tol_scale;
    VerificationReport r;
    r.suite = "constants";
    const double wu = std::exp(3.0 * kConstants.zeta_prime_minus_one + kConstants.ln_two / 12.0);
    r.add("constants.wu_identity", std::pow(2.0, 0.25) * a_of_lambda(1.0), wu, wu_identity_residual(), 1e-12 * s);
    r.add_abs("constants.a_at_one", a_of_lambda(1.0),
              std::exp(3.0 * kConstants.zeta_prime_minus_one - kConstants.ln_two / 6.0), 1e-13 * s);
    r.add_abs("constants.a_limit_zero", a_of_lambda(1e-12), 0.5, 1e-10 * s);
    r.add_abs("constants.sigma_half", sigma_of_lambda(0.5), 1.0 / 3.0, 1e-15 * s);
    double inverse_err = 0.0;
    bool increasing = true;
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double lp = i / 100.0;
        const double sg = sigma_of_lambda(lp);
        inverse_err = std::max(inverse_err, std::abs(lambda_pi_of_sigma(sg) - lp));
        increasing = increasing && sg > prev;
        prev = sg;
    }
    r.add("constants.sigma_inverse", 0.0, 0.0, inverse_err, 1e-14 * s);
    r.add("constants.sigma_monotone", increasing ? 1.0 : 0.0, 1.0, increasing ? 0.0 : 1.0, 0.0);
    r.add_abs("constants.b_coeff_origin", b_coeff(0.0, 0.0), 1.0, 1e-15 * s);
    double reduction = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double sg = i / 20.0;
        reduction = std::max(reduction, std::abs(b_coeff(sg, 0.0) / b_coeff_sinh_gordon(sg) - 1.0));
    }
    r.add("constants.b_coeff_reduction", 0.0, 0.0, reduction, 1e-13 * s);
    r.add_abs("constants.c_of_nu_half", c_of_nu(0.5), 5.0 * kConstants.ln_two - 1.0 - kConstants.euler_gamma,
              1e-13 * s);
    for (double t : {1e-2, 1e-3, 1e-4})
        r.add_abs(fmt("constants.c_of_nu_limit.t=%g", t), psi_small_t(t, {1.0, 1e-6}), psi_small_t(t, {1.0, 0.0}),
                  1e-4 * s);
    for (double lp : {0.3, 0.6, 0.9})
        r.add(fmt("constants.l_decomposition.lp=%g", lp), l_quadrature(lp), l_closed_form(lp),
              l_decomposition_residual(lp), (lp < 0.8 ? 1e-8 : 1e-7) * s);

    const std::vector<double> ts{1e-2, 1e-3, 1e-4};
    for (double lp : {0.25, 0.5, 0.75}) {
        const Trajectory traj = solve_at({lp, 0.0}, ts);
        std::vector<std::pair<double, double>> samples;
        for (double t : ts) samples.emplace_back(t, tau_hamiltonian(traj, t, Branch::minus).value);
        const double sg = sigma_of_lambda(lp);
        const PrefactorEstimate pe = extract_prefactor(samples, sg);
        const double expected_ratio = std::pow(10.0, -std::min(sg, 2.0 * (1.0 - sg)));
        add_ratio(r, fmt("constants.prefactor.decay_ratio.lp=%g", lp), pe.decay_ratio, expected_ratio, 0.25 * s);
        if (lp == 0.5) {
            r.add_rel("constants.prefactor.relative_error.lp=0.5", pe.a_est, a_of_lambda(lp), 0.06 * s);
            r.add("constants.prefactor.decay_ratio_window.lp=0.5", pe.decay_ratio, 0.45,
                  std::abs(pe.decay_ratio - 0.45), 0.15 * s);
        }
    }
    return r;
}

VerificationReport suite_action(const VerifyOptions& o) {
    VerificationReport r;
    r.suite = "action";
    const std::vector<double> ts{0.1, 1.0, 5.0};
    for (double lp : {0.25, 0.5, 0.75, 0.95}) {
        for (const ActionIdentity& a : action_identity(ts, {lp, 0.0}, quadrature(o)))
            r.add(fmt("action.identity.lp=%g.t=%g", lp, a.t), a.hamiltonian_integral, a.boundary_term + a.action,
                  a.residual, 1e-6 * (1.0 + std::abs(a.action)) * o.tol_scale);
    }
    const double t1[] = {1.0};
    r.add_abs("action.lambda_zero", action_S(t1, {0.0, 0.0}).front().value, 0.0, 0.0);
    return r;
}

VerificationReport suite_tau(const VerifyOptions& o) {
    const double s = o.tol_scale;
    VerificationReport r;
    r.suite = "tau";
    const std::vector<double> ts{0.1, 1.0, 5.0};
    for (double lp : {0.25, 0.5, 0.75, 0.95}) {
        const Trajectory traj = solve_at({lp, 0.0}, ts);
        for (double t : ts) {
            for (Branch b : {Branch::plus, Branch::minus}) {
                const TauValue h = tau_hamiltonian(traj, t, b);
                const TauValue a = tau_action(t, {lp, 0.0}, b, quadrature(o));
                r.add_rel("tau.route_agreement." + std::string(to_string(b)) + fmt(".lp=%g.t=%g", lp, t),
                          h.value, a.value, 1e-5 * s);
            }
        }
    }
    {
        const Trajectory traj = solve_at({0.5, 0.0}, {1.0});
        const double ratio = tau_hamiltonian(traj, 1.0, Branch::plus).value / tau_hamiltonian(traj, 1.0, Branch::minus).value;
        r.add_abs("tau.branch_ratio.lp=0.5.t=1", ratio, std::tanh(0.5 * traj.at(1.0).q), 1e-12 * s);
    }
    {
        const Trajectory traj = solve_at({0.0, 0.0}, {1.0});
        r.add_abs("tau.lambda_zero.minus", tau_hamiltonian(traj, 1.0, Branch::minus).value, 1.0, 0.0);
        r.add_abs("tau.lambda_zero.plus", tau_hamiltonian(traj, 1.0, Branch::plus).value, 0.0, 0.0);
    }

    auto large_t_orbit = [](double t) {
        SolverConfig cfg;
        cfg.t_seed = 2.0 * t;
        cfg.t_min = 0.25;
        cfg.sample_points = {t};
        return solve_family({0.5, 0.0}, cfg);
    };
    {
        const Trajectory traj = large_t_orbit(8.0);
        add_ratio(r, "tau.large_t.plus.t=8", tau_hamiltonian(traj, 8.0, Branch::plus).value,
                  tau_large_t(8.0, {0.5, 0.0}, Branch::plus), 5e-2 * s);
        const double lam = 0.5 / kPi;
        const double excess8 = tau_minus_excess(traj, 8.0);
        const double pred8 = kPi * lam * lam / (8.0 * 64.0) * std::exp(-16.0);
        r.notes.push_back(fmt("tau.large_t.minus: (tau_- - 1) / leading term = %.6f at t = 8 (correction ~ 1.7/t)",
                              excess8 / pred8));
        const Trajectory far = large_t_orbit(40.0);
        const double pred40 = kPi * lam * lam / (8.0 * 1600.0) * std::exp(-80.0);
        add_ratio(r, "tau.large_t.minus.t=40", tau_minus_excess(far, 40.0), pred40, 5e-2 * s);
    }

    // small-t laws
    {
        const std::vector<double> tl{0.3, 0.1, 0.03, 0.01, 1e-3};
        const Trajectory traj = solve_at({1.0, 0.0}, tl, precise_config());
        std::vector<double> res;
        for (double t : tl) res.push_back(traj.at(t).q - psi_small_t(t, {1.0, 0.0}));
        r.add_abs("tau.log_law.lp=1.t=0.001", traj.at(1e-3).q, psi_small_t(1e-3, {1.0, 0.0}), 1e-3 * s);
        r.add("tau.log_law.lp=1.decreasing", res[3], 0.0, max_increase({res.begin(), res.begin() + 4}), 0.0);
    }
    {
        const std::vector<double> tl{1e-2, 1e-3, 1e-4};
        const Trajectory traj = solve_at({0.5, 0.0}, tl, precise_config());
        const double sg = 1.0 / 3.0;
        std::vector<double> e;
        for (double t : tl) {
            const TrajectoryNode n = traj.at(t);
            e.push_back(std::abs(-0.5 * t * hamiltonian(n.q, n.p, t) - 0.25 * sg * sg));
        }
        const double expected = std::pow(10.0, -2.0 * (1.0 - sg));
        for (std::size_t i = 1; i < e.size(); ++i)
            add_ratio(r, fmt("tau.energy_limit.lp=0.5.decade=%g", tl[i]), e[i] / e[i - 1], expected, 0.25 * s);
    }
    return r;
}

VerificationReport suite_nu(const VerifyOptions& o) {
    const double s = o.tol_scale;
    VerificationReport r;
    r.suite = "nu";
    auto identity = [&](double lp, double nu, double t) {
        for (const NuActionTerms& a : nu_action_identity(t, {lp, nu}, quadrature(o)))
            r.add(fmt("nu.action_identity.j=%g", a.j) + fmt(".lp=%g.nu=%g.t=%g", lp, nu, t),
                  a.h_integral + a.boundary_term + a.l_term, a.action, a.residual, 1e-6 * (1.0 + std::abs(a.action)) * s);
    };
    identity(0.5, 0.25, 1.0);
    for (double nu : {0.1, 0.25, 0.45})
        for (double t : {0.5, 2.0}) identity(0.5, nu, t);
    {
        const auto zero = nu_action_identity(1.0, {0.0, 0.25});
        r.add("nu.action_identity.lambda_zero", 0.0, 0.0, std::max(zero[0].residual, zero[1].residual), 1e-14 * s);
    }

    for (const BmtwParams p : {BmtwParams{0.5, 0.25}, BmtwParams{1.0, 0.45}}) {
        const Trajectory traj = solve_family(p);
        const PiiiState st = to_piii(traj, traj.size() - 1);
        const std::string tag = fmt(".lp=%g.nu=%g.x=%g", p.lambda_pi, p.nu, st.x);
        r.add_abs("nu.momentum_limit.v1" + tag, st.v1, -0.5 * (2.0 * p.nu + 1.0), 1e-6 * s);
        r.add_abs("nu.momentum_limit.v2" + tag, st.v2, 0.5 * (2.0 * p.nu - 1.0), 1e-6 * s);
    }
    {
        const Trajectory traj = solve_at({0.5, 0.25}, {0.5, 1.0, 2.0});
        for (double t : {0.5, 1.0, 2.0}) {
            r.add_rel(fmt("nu.product_vs_direct.lp=0.5.nu=0.25.t=%g", t),
                      tau_nu(traj, t, Branch::minus, NuRoute::g10_product).value,
                      tau_nu(traj, t, Branch::minus, NuRoute::g1_direct).value, 1e-7 * s);
            const TrajectoryNode n = traj.at(t);
            const PiiiState st = to_piii(t, n.q, n.p, 0.25);
            const double x = 0.5 * t;
            r.add_abs(fmt("nu.eliminated_form.j=1.t=%g", t), st.h1, piii_h_eliminated(1, st.u, st.du_dx, x, 0.25), 1e-9 * s);
            r.add_abs(fmt("nu.eliminated_form.j=2.t=%g", t), st.h2, piii_h_eliminated(2, st.u, st.du_dx, x, 0.25), 1e-9 * s);
        }
    }
    {
        const Trajectory traj = solve_at({0.5, 0.0}, {0.1, 1.0, 5.0});
        for (double t : {0.1, 1.0, 5.0}) {
            const double h = tau_hamiltonian(traj, t, Branch::minus).value;
            r.add_rel(fmt("nu.zero_reduction.direct.t=%g", t), tau_nu(traj, t, Branch::minus, NuRoute::g1_direct).value, h,
                      1e-8 * s);
            r.add_rel(fmt("nu.zero_reduction.product.t=%g", t), tau_nu(traj, t, Branch::minus, NuRoute::g10_product).value,
                      h, 1e-8 * s);
        }
    }
    {
        const std::vector<double> tl{1e-2, 1e-3, 1e-4};
        const Trajectory traj = solve_at({0.5, 0.25}, tl, precise_config());
        std::vector<double> res;
        for (double t : tl) res.push_back(traj.at(t).q - psi_small_t(t, {0.5, 0.25}));
        const double expected = std::pow(10.0, -2.0 * (1.0 - 1.0 / 3.0));
        for (std::size_t i = 1; i < res.size(); ++i)
            add_ratio(r, fmt("nu.expansion_ratio.lp=0.5.nu=0.25.decade=%g", tl[i]), res[i] / res[i - 1], expected,
                      0.25 * s);
    }
    {
        const std::vector<double> tl{1e-2, 1e-3, 1e-4};
        const Trajectory traj = solve_at({1.0, 0.5}, tl, precise_config());
        std::vector<double> res;
        for (double t : tl) res.push_back(traj.at(t).q - psi_small_t(t, {1.0, 0.5}));
        r.add("nu.log_law.lp=1.nu=0.5.decreasing", res.back(), 0.0, max_increase(res), 0.0);
    }
    r.notes.push_back(
        "nu.large_t: the minus-branch display carries a factor nu, so its nu -> 0 limit is 1 while the nu = 0 law keeps "
        "an e^{-2t}/t^2 term; both are encoded as stated and neither is asserted uniformly");
    return r;
}

VerificationReport suite_fredholm(const VerifyOptions& o) {
    const double s = o.tol_scale;
    VerificationReport r;
    r.suite = "fredholm";
    for (double t : {0.5, 1.0, 2.0}) {
        const TauValue f = fredholm_tau_minus(t, 200);
        const TauValue h = tau_hamiltonian(t, {1.0, 0.0}, Branch::minus);
        r.add_rel(fmt("fredholm.vs_hamiltonian.t=%g", t), f.value, h.value, 1e-5 * s);
    }
    {
        const FredholmResult d = fredholm_determinant(1.0, 200);
        const double tau = tau_hamiltonian(1.0, {1.0, 0.0}, Branch::minus).value;
        r.add_rel("fredholm.squared_determinant.t=1", d.det_squared, tau * tau, 1e-5 * s);
        r.add_abs("fredholm.antisymmetry.t=1", d.det_minus, d.det_plus, 1e-12 * s);
    }
    r.add_abs("fredholm.large_t.t=8", fredholm_tau_minus(8.0, 200).value, 1.0, 1e-6 * s);
    r.add_abs("fredholm.refinement.t=0.5", fredholm_tau_minus(0.5, 200).value, fredholm_tau_minus(0.5, 400).value,
              1e-7 * s);
    r.notes.push_back("fredholm: det(I - K^2) of the Nystrom kernel equals tau_minus squared; tau_minus = det(I - K)");
    return r;
}

}  // namespace

SolverConfig precise_config() {
    SolverConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    return cfg;
}

double tau_minus_excess(const Trajectory& traj, double t) {
    const TrajectoryNode n = traj.at(t);
    const double a = n.acc_H + traj.tail().H;
    const double sh = std::sinh(0.25 * n.q);
    return std::expm1(0.5 * a) * std::cosh(0.5 * n.q) + 2.0 * sh * sh;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"specfn", "action", "tau", "nu", "fredholm", "constants", "all"};
    return names;
}

VerificationReport run_suite(const std::string& suite, const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    if (suite == "specfn") r = suite_specfn(options);
    else if (suite == "action") r = suite_action(options);
    else if (suite == "tau") r = suite_tau(options);
    else if (suite == "nu") r = suite_nu(options);
    else if (suite == "fredholm") r = suite_fredholm(options);
    else if (suite == "constants") r = suite_constants(options);
    else if (suite == "all") {
        r.suite = "all";
        for (const auto& name : suite_names())
            if (name != "all") {
                VerifyOptions inner = options;
                inner.fixtures = nullptr;
                r.merge(run_suite(name, inner));
            }
    } else {
        throw DomainError("unknown suite '" + suite + "'");
    }
    if (options.fixtures) r.merge(fixture_report(*options.fixtures));
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace isingtau
