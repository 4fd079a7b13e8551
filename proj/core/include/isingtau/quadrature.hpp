#pragma once

#include <functional>
#include <vector>

namespace isingtau::quad {

/// Nodes and weights of an n-point rule.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
Rule gauss_legendre(int n);

/// Gauss-Legendre rule mapped onto [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Apply a rule to f.
template <class F>
double apply(const Rule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

struct Estimate {
    double value;
    double error;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            double rel_tol = 1e-14, unsigned max_depth = 12);

}  // namespace isingtau::quad
