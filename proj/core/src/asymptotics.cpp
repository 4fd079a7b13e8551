#include "isingtau/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/quadrature.hpp"
#include "isingtau/specfn.hpp"

namespace isingtau {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double d_ln_b_d_sigma(double sigma) {
    return -3.0 * kConstants.ln_two - 0.5 * specfn::digamma(0.5 * (1.0 - sigma)) -
           0.5 * specfn::digamma(0.5 * (1.0 + sigma));
}

}  // namespace

double sigma_of_lambda(double lambda_pi) {
    if (!(lambda_pi >= 0.0 && lambda_pi <= 1.0)) throw DomainError("lambda_pi must lie in [0, 1]");
    return 2.0 / kPi * std::asin(lambda_pi);
}

double lambda_pi_of_sigma(double sigma) { return std::sin(0.5 * kPi * sigma); }

double b_coeff(double sigma, double nu) {
    if (!(sigma >= 0.0)) throw DomainError("b_coeff: sigma must be non-negative");
    if (!(sigma < 1.0)) throw DomainError("b_coeff: B diverges at sigma = 1; use the lambda pi = 1 predictor");
    if (!(nu > -0.5)) throw DomainError("b_coeff: nu must exceed -1/2");
    const double ratio = specfn::ln_gamma(0.5 * (1.0 - sigma)) - specfn::ln_gamma(0.5 * (1.0 + sigma));
    const double nu_ratio = specfn::ln_gamma(nu + 0.5 * (1.0 + sigma)) - specfn::ln_gamma(nu + 0.5 * (1.0 - sigma));
    return std::exp(-3.0 * sigma * kConstants.ln_two + 2.0 * ratio + nu_ratio);
}

double b_coeff_sinh_gordon(double sigma) {
    if (!(sigma >= 0.0 && sigma < 1.0)) throw DomainError("b_coeff: sigma must lie in [0, 1)");
    return std::exp(-3.0 * sigma * kConstants.ln_two + specfn::ln_gamma(0.5 * (1.0 - sigma)) -
                    specfn::ln_gamma(0.5 * (1.0 + sigma)));
}

double a_of_lambda(double lambda_pi) {
    if (!(lambda_pi > 0.0 && lambda_pi <= 1.0)) throw DomainError("a_of_lambda: lambda_pi must lie in (0, 1]");
    const double s = 0.5 * (1.0 - sigma_of_lambda(lambda_pi));
    const double ln_a = 3.0 * kConstants.zeta_prime_minus_one - (3.0 * s * s + 1.0 / 6.0) * kConstants.ln_two -
                        specfn::ln_barnes_g(1.0 + s) - specfn::ln_barnes_g(1.0 - s);
    return std::exp(ln_a);
}

double c_of_nu(double nu) {
    if (!(nu > -0.5)) throw DomainError("c_of_nu: nu must exceed -1/2");
    return 1.0 + 2.0 * nu * (3.0 * kConstants.ln_two - 2.0 * kConstants.euler_gamma - specfn::digamma(1.0 + nu));
}

double c_of_nu_quadratic(double nu) {
    if (!(nu > -0.5)) throw DomainError("c_of_nu: nu must exceed -1/2");
    const double m = 3.0 * kConstants.ln_two - 2.0 * kConstants.euler_gamma - specfn::digamma(1.0 + nu);
    return 0.5 * m * (c_of_nu(nu) + 1.0);
}

AsymptoticConstants asymptotic_constants(const BmtwParams& params) {
    params.validate();
    AsymptoticConstants c;
    c.nu = params.nu;
    c.sigma = sigma_of_lambda(params.lambda_pi);
    c.s = 0.5 * (1.0 - c.sigma);
    c.B = c.sigma < 1.0 ? b_coeff(c.sigma, params.nu) : std::numeric_limits<double>::infinity();
    c.A = (params.nu == 0.0 && params.lambda_pi > 0.0) ? a_of_lambda(params.lambda_pi) : kNaN;
    return c;
}

double psi_small_t(double t, const BmtwParams& params) {
    params.validate();
    if (!(t > 0.0)) throw DomainError("psi_small_t: t must be positive");
    const double nu = params.nu;
    const double lt = std::log(t);
    if (params.lambda_pi < 1.0) {
        const double sigma = sigma_of_lambda(params.lambda_pi);
        const double b = b_coeff(sigma, nu);
        const double bracket = 1.0 - nu / b * std::pow(1.0 - sigma, -2.0) * std::pow(t, 1.0 - sigma) +
                               b * nu * std::pow(1.0 + sigma, -2.0) * std::pow(t, 1.0 + sigma);
        return -sigma * lt - std::log(b) - std::log(bracket);
    }
    const double bracket = nu * lt * lt - c_of_nu(nu) * lt + c_of_nu_quadratic(nu);
    return -std::log(0.5 * t * bracket);
}

double tau_large_t(double t, const BmtwParams& params, Branch branch) {
    params.validate();
    if (!(t > 0.0)) throw DomainError("tau_large_t: t must be positive");
    const double lam = params.lambda();
    const double nu = params.nu;
    if (branch == Branch::plus)
        return lam * std::exp(specfn::ln_gamma(nu + 0.5) - (nu + 0.5) * std::log(2.0 * t) - t);
    if (nu == 0.0) return 1.0 + kPi * lam * lam / (8.0 * t * t) * std::exp(-2.0 * t);
    return 1.0 - 0.5 * lam * lam * nu * std::exp(2.0 * specfn::ln_gamma(nu + 0.5) - (2.0 * nu + 1.0) * std::log(2.0 * t) - 2.0 * t);
}

PrefactorEstimate extract_prefactor(std::span<const std::pair<double, double>> samples, double sigma) {
    if (samples.size() < 3) throw DomainError("extract_prefactor: need at least 3 samples");
    PrefactorEstimate out;
    const double exponent = -sigma * (sigma - 2.0) / 4.0;
    for (const auto& [t, tau] : samples) {
        if (!(t > 0.0)) throw DomainError("extract_prefactor: sample t must be positive");
        out.estimates.push_back(tau * std::pow(t, exponent));
    }
    const std::size_t k = out.estimates.size() - 1;
    out.a_est = out.estimates[k];
    out.decay_ratio =
        std::abs(out.estimates[k] - out.estimates[k - 1]) / std::abs(out.estimates[k - 1] - out.estimates[k - 2]);
    return out;
}

double wu_identity_residual() {
    return std::abs(std::pow(2.0, 0.25) * a_of_lambda(1.0) -
                    std::exp(3.0 * kConstants.zeta_prime_minus_one + kConstants.ln_two / 12.0));
}

double l_closed_form(double lambda_pi) {
    const double sigma = sigma_of_lambda(lambda_pi);
    const double s = 0.5 * (1.0 - sigma);
    const double ln2 = kConstants.ln_two;
    const double first = -0.75 * sigma * sigma * ln2;
    const double elementary = -0.5 * std::log(s) - 0.5 * sigma - 0.5 * ln2;
    const double barnes = 0.5 * std::log(s) +
                          0.5 * (specfn::ln_gamma(0.5 * (1.0 - sigma)) - specfn::ln_gamma(0.5 * (1.0 + sigma))) -
                          s * s - specfn::ln_barnes_g(1.0 + s) - specfn::ln_barnes_g(1.0 - s) + 0.25 +
                          7.0 / 12.0 * ln2 + 3.0 * kConstants.zeta_prime_minus_one;
    return first + elementary + barnes;
}

double l_quadrature(double lambda_pi, int nodes) {
    const double sigma = sigma_of_lambda(lambda_pi);
    const quad::Rule rule = quad::gauss_legendre(nodes, 0.0, sigma);
    return 0.5 * quad::apply(rule, [](double x) { return x * d_ln_b_d_sigma(x); });
}

double l_decomposition_residual(double lambda_pi) {
    if (!(lambda_pi > 0.0 && lambda_pi < 1.0)) throw DomainError("l_decomposition_residual: lambda_pi must lie in (0, 1)");
    return std::abs(l_quadrature(lambda_pi) - l_closed_form(lambda_pi));
}

}  // namespace isingtau
