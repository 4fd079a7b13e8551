// Acceptance criteria. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "isingtau/asymptotics.hpp"
#include "isingtau/constants.hpp"
#include "isingtau/fixtures.hpp"
#include "isingtau/fredholm.hpp"
#include "isingtau/specfn.hpp"
#include "isingtau/tau.hpp"
#include "isingtau/verify.hpp"

using namespace isingtau;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what, double value, double limit) {
        if (!ok) {
            pass = false;
            detail << what << " = " << value << " (limit " << limit << "); ";
        }
    }
    void worst(const std::string& what, double value) { detail << what << " " << value << "; "; }
};

Trajectory orbit(const BmtwParams& p, std::vector<double> ts, SolverConfig cfg = {}) {
    cfg.t_min = std::min(cfg.t_min, *std::min_element(ts.begin(), ts.end()));
    cfg.sample_points = std::move(ts);
    return solve_family(p, cfg);
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

Outcome special_values() {
    Outcome o;
    const double g = std::abs(std::exp(specfn::ln_gamma(0.5)) - std::sqrt(kPi));
    const double expected = 3.0 * kConstants.zeta_prime_minus_one - 0.5 * std::log(kPi) + kConstants.ln_two / 12.0;
    const double b = std::abs(2.0 * specfn::ln_barnes_g(0.5) - expected);
    o.require(g <= 1e-13, "gamma(1/2)", g, 1e-13);
    o.require(b <= 1e-11, "2 ln G(1/2)", b, 1e-11);
    o.worst("gamma", g);
    o.worst("barnes", b);
    return o;
}

Outcome barnes_integral() {
    Outcome o;
    double worst = 0.0;
    for (double z : {0.25, 0.5, 1.0}) {
        const double r = specfn::barnes_integral_residual(z);
        o.require(r <= 1e-10, "z=" + std::to_string(z), r, 1e-10);
        worst = std::max(worst, r);
    }
    o.worst("max residual", worst);
    return o;
}

Outcome bc_integral_k0() {
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = 0.1 * std::pow(300.0, i / 19.0);
        const double r = rel(specfn::bc_integral(t, 0.0, false).value, specfn::bessel_k(0, t));
        o.require(r <= 1e-10, "t=" + std::to_string(t), r, 1e-10);
        worst = std::max(worst, r);
    }
    o.worst("max relative", worst);
    return o;
}

Outcome action_identity_grid() {
    Outcome o;
    const std::vector<double> ts{0.1, 1.0, 5.0};
    double worst = 0.0;
    for (double lp : {0.25, 0.5, 0.75, 0.95}) {
        for (const ActionIdentity& a : action_identity(ts, {lp, 0.0})) {
            const double scaled = a.residual / (1.0 + std::abs(a.action));
            o.require(scaled <= 1e-6, "lp=" + std::to_string(lp) + " t=" + std::to_string(a.t), scaled, 1e-6);
            worst = std::max(worst, scaled);
        }
    }
    o.worst("max residual/(1+|S|)", worst);
    return o;
}

Outcome route_agreement() {
    Outcome o;
    const std::vector<double> ts{0.1, 1.0, 5.0};
    double worst = 0.0;
    for (double lp : {0.25, 0.5, 0.75, 0.95}) {
        const Trajectory traj = orbit({lp, 0.0}, ts);
        for (double t : ts) {
            for (Branch b : {Branch::plus, Branch::minus}) {
                const double r = rel(tau_hamiltonian(traj, t, b).value, tau_action(t, {lp, 0.0}, b).value);
                o.require(r <= 1e-5, "lp=" + std::to_string(lp) + " t=" + std::to_string(t), r, 1e-5);
                worst = std::max(worst, r);
            }
        }
    }
    o.worst("max relative", worst);
    return o;
}

Outcome prefactor() {
    Outcome o;
    const std::vector<double> ts{1e-2, 1e-3, 1e-4};
    const Trajectory traj = orbit({0.5, 0.0}, ts);
    std::vector<std::pair<double, double>> samples;
    for (double t : ts) samples.emplace_back(t, tau_hamiltonian(traj, t, Branch::minus).value);
    const PrefactorEstimate pe = extract_prefactor(samples, sigma_of_lambda(0.5));
    const double r = rel(pe.a_est, a_of_lambda(0.5));
    o.require(r <= 0.06, "A_est relative error", r, 0.06);
    o.require(pe.decay_ratio >= 0.3 && pe.decay_ratio <= 0.6, "decade ratio", pe.decay_ratio, 0.6);
    o.worst("relative error", r);
    o.worst("decade ratio", pe.decay_ratio);
    return o;
}

Outcome wu_identity(const FixtureSet& fixtures) {
    Outcome o;
    const double r = wu_identity_residual();
    o.require(r <= 1e-12, "identity residual", r, 1e-12);
    const double value = std::pow(2.0, 0.25) * a_of_lambda(1.0);
    const double expected = fixtures.at("wu_constant").number();
    const double d = std::abs(value - expected);
    o.require(d <= 1e-14, "fixture deviation", d, 1e-14);
    o.require(std::abs(value - 0.645002) <= 5e-7, "value", value, 0.645002);
    o.worst("residual", r);
    o.worst("2^{1/4} A", value);
    return o;
}

Outcome log_law() {
    Outcome o;
    const std::vector<double> ts{0.3, 0.1, 0.03, 0.01, 1e-3};
    const Trajectory traj = orbit({1.0, 0.0}, ts, precise_config());
    std::vector<double> res;
    for (double t : ts) res.push_back(std::abs(traj.at(t).q - psi_small_t(t, {1.0, 0.0})));
    o.require(res.back() <= 1e-3, "residual at t=1e-3", res.back(), 1e-3);
    for (std::size_t i = 1; i + 1 < res.size(); ++i)
        o.require(res[i] < res[i - 1], "residual increase at t=" + std::to_string(ts[i]), res[i], res[i - 1]);
    o.worst("residual at 0.3", res.front());
    o.worst("at 1e-3", res.back());
    return o;
}

Outcome fredholm() {
    Outcome o;
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const double r = rel(fredholm_tau_minus(t, 200).value, tau_hamiltonian(t, {1.0, 0.0}, Branch::minus).value);
        o.require(r <= 1e-5, "t=" + std::to_string(t), r, 1e-5);
        worst = std::max(worst, r);
    }
    o.worst("max relative", worst);
    return o;
}

Outcome nu_suite() {
    Outcome o;
    for (const NuActionTerms& a : nu_action_identity(1.0, {0.5, 0.25})) {
        o.require(a.residual <= 1e-6, "action identity j=" + std::to_string(a.j), a.residual, 1e-6);
        o.worst("identity j=" + std::to_string(a.j), a.residual);
    }
    {
        const Trajectory traj = solve_family({0.5, 0.25});
        const PiiiState st = to_piii(traj, traj.size() - 1);
        const double d1 = std::abs(st.v1 + 0.75), d2 = std::abs(st.v2 + 0.25);
        o.require(std::abs(st.x - 7.0) < 1e-12, "x", st.x, 7.0);
        o.require(d1 <= 1e-6, "v1 limit", d1, 1e-6);
        o.require(d2 <= 1e-6, "v2 limit", d2, 1e-6);
        o.worst("v2 limit", d2);
    }
    {
        const std::vector<double> ts{0.5, 1.0, 2.0};
        const Trajectory traj = orbit({0.5, 0.25}, ts);
        double worst = 0.0;
        for (double t : ts)
            worst = std::max(worst, rel(tau_nu(traj, t, Branch::minus, NuRoute::g10_product).value,
                                        tau_nu(traj, t, Branch::minus, NuRoute::g1_direct).value));
        o.require(worst <= 1e-7, "product vs direct", worst, 1e-7);
    }
    {
        const std::vector<double> ts{0.1, 1.0, 5.0};
        const Trajectory traj = orbit({0.5, 0.0}, ts);
        double worst = 0.0;
        for (double t : ts) {
            const double h = tau_hamiltonian(traj, t, Branch::minus).value;
            for (NuRoute route : {NuRoute::g1_direct, NuRoute::g10_product})
                worst = std::max(worst, rel(tau_nu(traj, t, Branch::minus, route).value, h));
        }
        o.require(worst <= 1e-8, "nu = 0 reduction", worst, 1e-8);
    }
    {
        const std::vector<double> ts{1e-2, 1e-3, 1e-4};
        const Trajectory traj = orbit({0.5, 0.25}, ts, precise_config());
        const double expected = std::pow(10.0, -4.0 / 3.0);
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double r0 = traj.at(ts[i - 1]).q - psi_small_t(ts[i - 1], {0.5, 0.25});
            const double r1 = traj.at(ts[i]).q - psi_small_t(ts[i], {0.5, 0.25});
            const double d = rel(r1 / r0, expected);
            o.require(d <= 0.25, "expansion ratio at t=" + std::to_string(ts[i]), r1 / r0, expected);
        }
    }
    return o;
}

Outcome energy_limit() {
    Outcome o;
    const std::vector<double> ts{1e-2, 1e-3, 1e-4};
    const Trajectory traj = orbit({0.5, 0.0}, ts, precise_config());
    const double sg = sigma_of_lambda(0.5);
    std::vector<double> e;
    for (double t : ts) {
        const TrajectoryNode n = traj.at(t);
        e.push_back(std::abs(-0.5 * t * hamiltonian(n.q, n.p, t) - 0.25 * sg * sg));
    }
    const double expected = std::pow(10.0, -2.0 * (1.0 - sg));
    for (std::size_t i = 1; i < e.size(); ++i) {
        const double ratio = e[i] / e[i - 1];
        o.require(e[i] < e[i - 1], "increase at t=" + std::to_string(ts[i]), e[i], e[i - 1]);
        o.require(rel(ratio, expected) <= 0.25, "decade ratio at t=" + std::to_string(ts[i]), ratio, expected);
        o.worst("ratio", ratio);
    }
    return o;
}

Outcome l_decomposition() {
    Outcome o;
    for (double lp : {0.3, 0.6, 0.9}) {
        const double limit = lp < 0.8 ? 1e-8 : 1e-7;
        const double r = l_decomposition_residual(lp);
        o.require(r <= limit, "lp=" + std::to_string(lp), r, limit);
        o.worst("lp=" + std::to_string(lp), r);
    }
    return o;
}

#ifdef ISINGTAU_CLI
std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    if (pclose(pipe) != 0) out.insert(0, "exit status nonzero\n");
    return out;
}
#endif

Outcome determinism() {
    Outcome o;
#ifdef ISINGTAU_CLI
    const std::string base = std::string("\"") + ISINGTAU_CLI + "\" verify --suite all --fixtures \"" + ISINGTAU_FIXTURES +
                             "\" --threads ";
    const std::string a = capture(base + "1");
    const std::string b = capture(base + "1");
    const std::string c = capture(base + "4");
    o.require(a.size() > 100 && a.rfind("exit status", 0) != 0, "report size", double(a.size()), 100);
    o.require(a == b, "repeat run differs", 1, 0);
    o.require(a == c, "threads 1 vs 4 differ", 1, 0);
    o.worst("bytes", double(a.size()));
#else
    VerifyOptions one, four;
    four.threads = 4;
    const std::string a = run_suite("all", one).dump();
    o.require(a == run_suite("all", one).dump(), "repeat run differs", 1, 0);
    o.require(a == run_suite("all", four).dump(), "threads 1 vs 4 differ", 1, 0);
    o.worst("bytes", double(a.size()));
#endif
    return o;
}

}  // namespace

int main() {
    const FixtureSet fixtures = FixtureSet::load(ISINGTAU_FIXTURES);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"special_values", special_values},
        {"barnes_integral", barnes_integral},
        {"bc_integral_vs_k0", bc_integral_k0},
        {"action_identity", action_identity_grid},
        {"route_agreement", route_agreement},
        {"prefactor_a", prefactor},
        {"wu_identity", [&] { return wu_identity(fixtures); }},
        {"log_law_small_t", log_law},
        {"fredholm_cross_check", fredholm},
        {"nu_suite", nu_suite},
        {"energy_limit", energy_limit},
        {"l_decomposition", l_decomposition},
        {"determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << "  " << o.detail.str() << '\n' << std::flush;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
