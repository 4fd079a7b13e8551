#pragma once

// Closed-form constants and asymptotic predictors of the family.
//
//   sigma = (2/pi) arcsin(lambda pi),  s = (1 - sigma)/2
//   B(sigma, nu) = 2^{-3 sigma} [Gamma((1-sigma)/2) / Gamma((1+sigma)/2)]^2
//                  * Gamma(nu + (1+sigma)/2) / Gamma(nu + (1-sigma)/2)
//   A(lambda) = exp(3 zeta'(-1) - (3 s^2 + 1/6) ln 2) / (G(1+s) G(1-s))
//   C(nu) = 1 + 2 nu (3 ln 2 - 2 gamma_E - psi(1 + nu))

#include <span>
#include <utility>
#include <vector>

#include "isingtau/solver.hpp"

namespace isingtau {

struct AsymptoticConstants {
    double sigma = 0.0;
    double s = 0.5;
    double B = 1.0;  // +inf at sigma = 1
    double A = 0.0;  // NaN where no closed form applies (nu != 0 or lambda pi = 0)
    double nu = 0.0;
};

/// Throws DomainError outside [0, 1].
double sigma_of_lambda(double lambda_pi);

/// Inverse map sigma -> lambda pi = sin(pi sigma / 2).
double lambda_pi_of_sigma(double sigma);

/// General B(sigma, nu). Throws DomainError for sigma >= 1 (use the lambda pi = 1 predictor).
double b_coeff(double sigma, double nu);

/// nu = 0 form 2^{-3 sigma} Gamma((1-sigma)/2) / Gamma((1+sigma)/2).
double b_coeff_sinh_gordon(double sigma);

/// A(lambda) for lambda pi in (0, 1]; the lambda pi -> 0+ limit is 1/2 but 0 is rejected.
double a_of_lambda(double lambda_pi);

double c_of_nu(double nu);

/// (C(nu)^2 - 1)/(4 nu), continuous through nu = 0.
double c_of_nu_quadratic(double nu);

AsymptoticConstants asymptotic_constants(const BmtwParams& params);

/// Small-t prediction of psi = q. lambda pi < 1: three-term expansion with B(sigma, nu);
/// lambda pi = 1: the logarithmic law with C(nu).
double psi_small_t(double t, const BmtwParams& params);

/// Leading large-t behaviour of tau_+ and tau_-. The minus branch at nu = 0 uses the
/// 1 + (pi lambda^2 / 8 t^2) e^{-2t} law; nu != 0 uses the nu-proportional one.
double tau_large_t(double t, const BmtwParams& params, Branch branch);

struct PrefactorEstimate {
    double a_est = 0.0;        // estimate at the last sample
    double decay_ratio = 0.0;  // |A_k - A_{k-1}| / |A_{k-1} - A_{k-2}| over the last three samples
    std::vector<double> estimates;
};

/// A_est(t) = tau t^{-sigma (sigma - 2)/4} along samples ordered as given
/// (geometrically spaced, decreasing t). Throws DomainError for fewer than 3 samples.
PrefactorEstimate extract_prefactor(std::span<const std::pair<double, double>> samples, double sigma);

/// |2^{1/4} A(1/pi) - exp(3 zeta'(-1) + ln 2 / 12)|.
double wu_identity_residual();

/// |L_quadrature - L_closed| with L = 1/2 int_0^lambda sigma d/dlambda' ln B dlambda'.
/// lambda pi must lie in (0, 1).
double l_decomposition_residual(double lambda_pi);

/// Closed form of L(lambda) assembled from the three elementary/Barnes pieces.
double l_closed_form(double lambda_pi);

/// L(lambda) by Gauss-Legendre quadrature in sigma'.
double l_quadrature(double lambda_pi, int nodes = 64);

}  // namespace isingtau
