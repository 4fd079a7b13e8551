#include "isingtau/fredholm.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/quadrature.hpp"

namespace isingtau {

namespace {

struct Dets {
    double minus;
    double plus;
};

Dets nystrom(double t, int n, double trunc) {
    const quad::Rule rule = quad::gauss_legendre(n, -trunc, trunc);
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i)
        g(i) = std::sqrt(rule.weights[i] / (2.0 * kPi)) * std::exp(-0.5 * t * std::cosh(rule.nodes[i]));
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = g(i) * std::tanh(0.5 * (rule.nodes[i] - rule.nodes[j])) * g(j);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a = id - k;
    const Eigen::MatrixXd b = id + k;
    return {a.partialPivLu().determinant(), b.partialPivLu().determinant()};
}

}  // namespace

double fredholm_default_trunc(double t) {
    if (!(t > 0.0)) throw DomainError("fredholm: t must be positive");
    return std::max(std::acosh(std::max(40.0 / t, 1.0)), 1.0);
}

FredholmResult fredholm_determinant(double t, int n, double trunc) {
    if (!(t > 0.0)) throw DomainError("fredholm: t must be positive");
    if (n < 20) throw DomainError("fredholm: n must be at least 20");
    if (trunc <= 0.0) trunc = fredholm_default_trunc(t);
    if (t * std::cosh(trunc) < 40.0 * (1.0 - 1e-12)) throw DomainError("fredholm: truncation needs t cosh(trunc) >= 40");

    const Dets full = nystrom(t, n, trunc);
    const Dets half = nystrom(t, n / 2, trunc);
    FredholmResult r;
    r.t = t;
    r.n = n;
    r.trunc = trunc;
    r.det_minus = full.minus;
    r.det_plus = full.plus;
    r.det_squared = full.minus * full.plus;
    r.est_error = std::abs(r.det_squared - half.minus * half.plus);
    return r;
}

TauValue fredholm_tau_minus(double t, int n, double trunc) {
    const FredholmResult r = fredholm_determinant(t, n, trunc);
    TauValue v;
    v.t = t;
    v.params = BmtwParams{1.0, 0.0};
    v.branch = Branch::minus;
    v.route = TauRoute::fredholm;
    v.value = std::sqrt(r.det_squared);
    v.est_error = 0.5 * r.est_error / v.value;
    return v;
}

}  // namespace isingtau
