#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingtau/fixtures.hpp"
#include "isingtau/solver.hpp"
#include "isingtau/tau.hpp"

namespace isingtau::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Thrown for invalid flag values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config_path;
    std::string fixtures_path;
    std::string out;
    unsigned threads = 1;
};

/// SolverConfig from the optional JSON file (t_seed, t_min, rel_tol, abs_tol, log_switch).
SolverConfig load_config(const std::string& path);

/// Parses "a,b,c" into doubles; empty string gives an empty list.
std::vector<double> parse_grid(const std::string& text);

struct SolveArgs {
    double lambda_pi = 0.0;
    double nu = 0.0;
    std::optional<double> t_min;
    std::optional<double> t_max;
};
int cmd_solve(const Common& c, const SolveArgs& a, std::ostream& out);

struct TauArgs {
    double t = 1.0;
    double lambda_pi = 0.0;
    double nu = 0.0;
    std::string branch = "minus";
    std::string route = "hamiltonian";
    int nodes = 16;
    int fredholm_n = 200;
};
int cmd_tau(const Common& c, const TauArgs& a, std::ostream& out);

struct VerifyArgs {
    std::string suite = "all";
    double tol_scale = 1.0;
    bool timing = false;
};
int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out);

struct SweepArgs {
    std::string lambda_grid;
    std::string nu_grid = "0";
    std::string t_grid;
    std::string quantity = "tau";
    std::string branch = "minus";
};
int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out);

struct PrefactorArgs {
    double lambda_pi = 0.5;
    double nu = 0.0;
    std::string t_grid = "1e-2,1e-3,1e-4";
};
int cmd_prefactor(const Common& c, const PrefactorArgs& a, std::ostream& out);

struct ConstantsArgs {
    double lambda_pi = 1.0;
    double nu = 0.0;
};
int cmd_constants(const Common& c, const ConstantsArgs& a, std::ostream& out);

/// Cross-checks the fixture file when one was given; prints a delta report to `err`.
/// Returns kFailure when any recognised fixture is out of tolerance.
int fixture_deltas(const Common& c, std::ostream& err);

}  // namespace isingtau::cli
