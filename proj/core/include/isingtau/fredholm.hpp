#pragma once

// Nystrom evaluation of the Fredholm determinant for the lambda pi = 1 orbit.
// With mu = e^u the kernel on L^2(du / 2 pi) is
//
//     K(u, u') = (1/2pi) e^{-(t/2) cosh u} tanh((u - u')/2) e^{-(t/2) cosh u'},
//
// which is antisymmetric, so det(I - K) = det(I + K) and det(I - K^2) is its square.

#include "isingtau/tau.hpp"

namespace isingtau {

struct FredholmResult {
    double t = 0.0;
    int n = 0;
    double trunc = 0.0;
    double det_minus = 0.0;   // det(I - K)
    double det_plus = 0.0;    // det(I + K)
    double det_squared = 0.0; // det(I - K^2) = det(I - K) det(I + K)
    double est_error = 0.0;   // |det_squared(n) - det_squared(n/2)|
};

/// Default truncation: max(acosh(40/t), 1), so that t cosh(trunc) >= 40.
double fredholm_default_trunc(double t);

/// Throws DomainError for t <= 0, n < 20 or t cosh(trunc) < 40.
FredholmResult fredholm_determinant(double t, int n = 200, double trunc = 0.0);

/// tau_-(t, 1/pi) = sqrt(det(I - K) det(I + K)). trunc <= 0 selects the default.
TauValue fredholm_tau_minus(double t, int n = 200, double trunc = 0.0);

}  // namespace isingtau
