#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "isingtau/asymptotics.hpp"
#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/fredholm.hpp"
#include "isingtau/parallel.hpp"
#include "isingtau/report.hpp"
#include "isingtau/verify.hpp"

namespace isingtau::cli {

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SolverConfig base_config(const Common& c) { return c.config_path.empty() ? SolverConfig{} : load_config(c.config_path); }

void check_params(const BmtwParams& p) {
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

Branch branch_of(const std::string& s) {
    try {
        return parse_branch(s);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

SolverConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    SolverConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "t_seed") cfg.t_seed = value.get<double>();
        else if (key == "t_min") cfg.t_min = value.get<double>();
        else if (key == "rel_tol") cfg.rel_tol = value.get<double>();
        else if (key == "abs_tol") cfg.abs_tol = value.get<double>();
        else if (key == "log_switch") cfg.log_switch = value.get<double>();
        else throw UsageError("config file " + path + ": unknown key '" + key + "'");
    }
    return cfg;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad grid value '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("bad grid value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int cmd_solve(const Common& c, const SolveArgs& a, std::ostream& out) {
    const BmtwParams params{a.lambda_pi, a.nu};
    check_params(params);
    SolverConfig cfg = base_config(c);
    if (a.t_min) cfg.t_min = *a.t_min;
    if (a.t_max) cfg.t_seed = *a.t_max;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const Trajectory traj = solve_family(params, cfg);
    out << "t,q,p,chi,acc_H,acc_action,acc_aux\n";
    for (const auto& n : traj.nodes())
        out << num(n.t) << ',' << num(n.q) << ',' << num(n.p) << ',' << num(n.chi) << ',' << num(n.acc_H) << ','
            << num(n.acc_action) << ',' << num(n.acc_aux) << '\n';
    return kOk;
}

int cmd_tau(const Common& c, const TauArgs& a, std::ostream& out) {
    const BmtwParams params{a.lambda_pi, a.nu};
    check_params(params);
    if (!(a.t > 0.0)) throw UsageError("--t must be positive");
    const Branch branch = branch_of(a.branch);
    SolverConfig cfg = base_config(c);
    TauValue v;
    if (a.route == "hamiltonian") {
        if (a.nu != 0.0) throw UsageError("route hamiltonian needs nu = 0; use nu-product");
        v = tau_hamiltonian(a.t, params, branch, cfg);
    } else if (a.route == "action") {
        if (a.nu != 0.0) throw UsageError("route action needs nu = 0");
        LambdaQuadrature q;
        q.nodes = a.nodes;
        q.threads = c.threads;
        q.solver = cfg;
        v = tau_action(a.t, params, branch, q);
    } else if (a.route == "nu-product") {
        v = tau_nu(a.t, params, branch, NuRoute::g10_product, cfg);
    } else if (a.route == "fredholm") {
        if (a.lambda_pi != 1.0 || a.nu != 0.0 || branch != Branch::minus)
            throw UsageError("route fredholm is defined for lambda_pi = 1, nu = 0, branch minus only");
        v = fredholm_tau_minus(a.t, a.fredholm_n);
    } else if (a.route == "asymptotic") {
        v.t = a.t;
        v.params = params;
        v.branch = branch;
        if (a.t >= 1.0) {
            v.route = TauRoute::asymptotic_large_t;
            v.value = tau_large_t(a.t, params, branch);
        } else {
            if (a.nu != 0.0 || a.lambda_pi == 0.0)
                throw UsageError("small-t asymptotic tau needs nu = 0 and lambda_pi in (0, 1]");
            const double sigma = sigma_of_lambda(a.lambda_pi);
            v.route = TauRoute::asymptotic_small_t;
            v.value = a_of_lambda(a.lambda_pi) * std::pow(a.t, 0.25 * sigma * (sigma - 2.0));
        }
        v.est_error = std::numeric_limits<double>::quiet_NaN();
    } else {
        throw UsageError("unknown route '" + a.route + "'");
    }
    out << to_json(v).dump() << '\n';
    return kOk;
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out) {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == a.suite;
    if (!known) throw UsageError("unknown suite '" + a.suite + "'");
    if (!(a.tol_scale > 0.0)) throw UsageError("--tol-scale must be positive");
    VerifyOptions opt;
    opt.tol_scale = a.tol_scale;
    opt.threads = c.threads;
    std::optional<FixtureSet> fixtures;
    if (!c.fixtures_path.empty()) {
        fixtures = FixtureSet::load(c.fixtures_path);
        opt.fixtures = &*fixtures;
    }
    const VerificationReport report = run_suite(a.suite, opt);
    out << report.dump(a.timing);
    return report.all_pass() ? kOk : kFailure;
}

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out) {
    const auto lambdas = parse_grid(a.lambda_grid);
    const auto nus = parse_grid(a.nu_grid);
    const auto ts = parse_grid(a.t_grid);
    if (a.quantity != "tau" && a.quantity != "A_est" && a.quantity != "residuals")
        throw UsageError("--quantity must be tau, A_est or residuals");
    const Branch branch = branch_of(a.branch);
    const SolverConfig cfg = base_config(c);

    struct Row {
        double lambda_pi, nu, t;
    };
    std::vector<Row> rows;
    for (double lp : lambdas)
        for (double nu : nus)
            for (double t : ts) rows.push_back({lp, nu, t});

    struct Result {
        double value = std::numeric_limits<double>::quiet_NaN();
        double reference = std::numeric_limits<double>::quiet_NaN();
        std::string error;
    };
    const auto results = parallel_map(rows.size(), c.threads, [&](std::size_t i) {
        const Row& row = rows[i];
        const BmtwParams p{row.lambda_pi, row.nu};
        Result res;
        try {
            p.validate();
            SolverConfig local = cfg;
            local.t_min = std::min(cfg.t_min, row.t);
            local.sample_points = {row.t};
            if (a.quantity == "residuals") {
                LambdaQuadrature q;
                q.solver = cfg;
                if (row.nu == 0.0) {
                    res.value = action_identity_residual(row.t, p, q);
                } else {
                    const auto terms = nu_action_identity(row.t, p, q);
                    res.value = std::max(terms[0].residual, terms[1].residual);
                }
            } else {
                const Trajectory traj = solve_family(p, local);
                const double tau = tau_nu(traj, row.t, branch, NuRoute::g1_direct).value;
                if (a.quantity == "tau") {
                    res.value = tau;
                } else {
                    const double sigma = sigma_of_lambda(row.lambda_pi);
                    res.value = tau * std::pow(row.t, -0.25 * sigma * (sigma - 2.0));
                    if (row.nu == 0.0 && row.lambda_pi > 0.0) res.reference = a_of_lambda(row.lambda_pi);
                }
            }
        } catch (const std::exception& e) {
            res.error = e.what();
        }
        return res;
    });

    out << "lambda_pi,nu,t,quantity,value,reference,error\n";
    bool failed = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::string err = results[i].error;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        failed = failed || !err.empty();
        out << num(rows[i].lambda_pi) << ',' << num(rows[i].nu) << ',' << num(rows[i].t) << ',' << a.quantity << ','
            << num(results[i].value) << ',' << num(results[i].reference) << ',' << err << '\n';
    }
    return failed ? kFailure : kOk;
}

int cmd_prefactor(const Common& c, const PrefactorArgs& a, std::ostream& out) {
    const BmtwParams params{a.lambda_pi, a.nu};
    check_params(params);
    if (a.lambda_pi == 0.0) throw UsageError("prefactor needs lambda_pi > 0");
    const auto ts = parse_grid(a.t_grid);
    if (ts.size() < 3) throw UsageError("--t-grid needs at least 3 values");
    SolverConfig cfg = base_config(c);
    for (double t : ts)
        if (!(t > 0.0)) throw UsageError("--t-grid values must be positive");
    cfg.t_min = std::min(cfg.t_min, *std::min_element(ts.begin(), ts.end()));
    cfg.sample_points = ts;
    const Trajectory traj = solve_family(params, cfg);
    std::vector<std::pair<double, double>> samples;
    for (double t : ts) samples.emplace_back(t, tau_nu(traj, t, Branch::minus, NuRoute::g1_direct).value);
    const double sigma = sigma_of_lambda(a.lambda_pi);
    const PrefactorEstimate pe = extract_prefactor(samples, sigma);
    nlohmann::json j;
    j["lambda_pi"] = a.lambda_pi;
    j["nu"] = a.nu;
    j["sigma"] = sigma;
    j["t"] = ts;
    j["a_est"] = pe.estimates;
    j["a_est_last"] = pe.a_est;
    j["decay_ratio"] = json_number(pe.decay_ratio);
    j["expected_decay_ratio"] = std::pow(10.0, -std::min(sigma, 2.0 * (1.0 - sigma)));
    j["a_of_lambda"] = a.nu == 0.0 ? json_number(a_of_lambda(a.lambda_pi)) : nlohmann::json(nullptr);
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_constants(const Common&, const ConstantsArgs& a, std::ostream& out) {
    const BmtwParams params{a.lambda_pi, a.nu};
    check_params(params);
    nlohmann::json j;
    j["lambda_pi"] = a.lambda_pi;
    j["asymptotic"] = to_json(asymptotic_constants(params));
    j["c_of_nu"] = round_sig15(c_of_nu(a.nu));
    j["wu_constant"] = round_sig15(std::exp(3.0 * kConstants.zeta_prime_minus_one + kConstants.ln_two / 12.0));
    j["wu_identity_residual"] = wu_identity_residual();
    j["fundamental"] = {{"euler_gamma", round_sig15(kConstants.euler_gamma)},
                        {"zeta_prime_minus_one", round_sig15(kConstants.zeta_prime_minus_one)},
                        {"ln_two", round_sig15(kConstants.ln_two)},
                        {"ln_pi", round_sig15(kConstants.ln_pi)},
                        {"sqrt_pi", round_sig15(kConstants.sqrt_pi)}};
    out << j.dump(2) << '\n';
    return kOk;
}

int fixture_deltas(const Common& c, std::ostream& err) {
    if (c.fixtures_path.empty()) return kOk;
    const VerificationReport r = fixture_report(FixtureSet::load(c.fixtures_path));
    for (const auto& chk : r.checks)
        err << (chk.pass ? "ok   " : "FAIL ") << chk.name << " delta=" << num(chk.residual) << " tol=" << num(chk.tolerance)
            << '\n';
    return r.all_pass() ? kOk : kFailure;
}

}  // namespace isingtau::cli
