#pragma once

// Real special functions on the positive axis. All functions are pure and
// reentrant; arguments outside the documented domain raise DomainError.

namespace isingtau::specfn {

/// Modified Bessel function of the second kind K_0 or K_1 for t > 0.
/// Power series for t <= 2, Steed's continued fraction above.
/// Underflows to 0 for t beyond ~745.
double bessel_k(int order, double t);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Digamma psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// ln G(x) of the Barnes G-function for x in (0, 3).
double ln_barnes_g(double x);

/// |int_0^z ln Gamma(1+x) dx - [z/2 ln(2 pi) - z(z+1)/2 + z ln Gamma(1+z) - ln G(1+z)]|
/// with the left side from adaptive quadrature. Certifies ln_barnes_g on (0, 1].
double barnes_integral_residual(double z);

struct BcIntegral {
    double value;       // I(t, nu)
    double derivative;  // dI/dt (0 when not requested)
};

/// I(t, nu) = int_1^inf e^{-t y} (y^2-1)^{-1/2} ((y-1)/(y+1))^nu dy, evaluated as
/// int_0^inf e^{-t cosh th} tanh^{2 nu}(th/2) dth. Requires t > 0, nu > -1/2.
BcIntegral bc_integral(double t, double nu, bool with_derivative = true);

}  // namespace isingtau::specfn
