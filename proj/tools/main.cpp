// isingtau command-line front end.
//
//   isingtau solve     --lambda-pi 0.5 --nu 0 --out traj.csv
//   isingtau tau       --t 1 --lambda-pi 1 --branch minus --route fredholm
//   isingtau verify    --suite all --threads 4
//   isingtau sweep     --lambda-grid 0.25,0.5 --t-grid 1e-2,1e-3 --quantity A_est
//   isingtau prefactor --lambda-pi 0.5
//   isingtau constants --lambda-pi 1

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "isingtau/errors.hpp"

using namespace isingtau::cli;

namespace {

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON file with solver defaults")->check(CLI::ExistingFile);
    sub->add_option("--fixtures", c.fixtures_path, "Fixture file to cross-check against")->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Output file (default: standard output)");
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tau-functions of the radial sinh-Gordon / Painleve-III family"};
    app.require_subcommand(1);
    Common common;

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve an orbit and write it as CSV");
    s->add_option("--lambda-pi", solve.lambda_pi, "lambda * pi in [0, 1]");
    s->add_option("--nu", solve.nu, "nu > -1/2");
    s->add_option("--t-min", solve.t_min, "Smallest t");
    s->add_option("--t-max", solve.t_max, "Seed point t_seed");
    add_common(s, common);

    TauArgs tau;
    auto* t = app.add_subcommand("tau", "Evaluate tau by one route (JSON record)");
    t->add_option("--t", tau.t, "t > 0");
    t->add_option("--lambda-pi", tau.lambda_pi);
    t->add_option("--nu", tau.nu);
    t->add_option("--branch", tau.branch)->check(CLI::IsMember({"plus", "minus"}));
    t->add_option("--route", tau.route)
        ->check(CLI::IsMember({"hamiltonian", "action", "nu-product", "fredholm", "asymptotic"}));
    t->add_option("--nodes", tau.nodes, "lambda-quadrature nodes")->check(CLI::Range(4, 512));
    t->add_option("--fredholm-n", tau.fredholm_n, "Nystrom nodes")->check(CLI::Range(20, 4000));
    add_common(t, common);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run a verification suite (JSON report)");
    v->add_option("--suite", verify.suite)
        ->check(CLI::IsMember({"specfn", "action", "tau", "nu", "fredholm", "constants", "all"}));
    v->add_option("--tol-scale", verify.tol_scale, "Multiply all tolerances");
    v->add_flag("--timing", verify.timing, "Include runtime_seconds");
    add_common(v, common);

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Tabulate a quantity over parameter grids (CSV)");
    w->add_option("--lambda-grid", sweep.lambda_grid, "Comma-separated lambda*pi values");
    w->add_option("--nu-grid", sweep.nu_grid, "Comma-separated nu values");
    w->add_option("--t-grid", sweep.t_grid, "Comma-separated t values");
    w->add_option("--quantity", sweep.quantity)->check(CLI::IsMember({"tau", "A_est", "residuals"}));
    w->add_option("--branch", sweep.branch)->check(CLI::IsMember({"plus", "minus"}));
    add_common(w, common);

    PrefactorArgs prefactor;
    auto* p = app.add_subcommand("prefactor", "Estimate the short-distance constant from an orbit");
    p->add_option("--lambda-pi", prefactor.lambda_pi);
    p->add_option("--nu", prefactor.nu);
    p->add_option("--t-grid", prefactor.t_grid);
    add_common(p, common);

    ConstantsArgs constants;
    auto* c = app.add_subcommand("constants", "Dump the closed-form constants (JSON)");
    c->add_option("--lambda-pi", constants.lambda_pi);
    c->add_option("--nu", constants.nu);
    add_common(c, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    std::ostringstream buffer;
    int rc = kOk;
    try {
        if (*s) rc = cmd_solve(common, solve, buffer);
        else if (*t) rc = cmd_tau(common, tau, buffer);
        else if (*v) rc = cmd_verify(common, verify, buffer);
        else if (*w) rc = cmd_sweep(common, sweep, buffer);
        else if (*p) rc = cmd_prefactor(common, prefactor, buffer);
        else if (*c) rc = cmd_constants(common, constants, buffer);
        // verify folds fixtures into its report
        if (!*v && fixture_deltas(common, std::cerr) != kOk && rc == kOk) rc = kFailure;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const isingtau::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (common.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream f(common.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << common.out << '\n';
            return kFailure;
        }
        f << buffer.str();
    }
    return rc;
}
