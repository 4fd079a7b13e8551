#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//
// Integrates y' = f(x, y) from x0 to x1 in either direction. Every accepted
// step is reported to an observer; the integrator lands exactly on each
// requested stop point. Error control uses the RMS norm of the embedded
// 4th-order difference scaled by atol + rtol * max(|y_old|, |y_new|).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isingtau/errors.hpp"

namespace isingtau::ode {

struct Dopri5Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::vector<double> atol_components;  // overrides atol per component when non-empty
    double h_init = 0.0;  // 0: chosen from the initial derivative
    long max_steps = 2'000'000;
};

struct Dopri5Stats {
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;

    explicit Dopri5(Dopri5Options options = {}) : opt_(std::move(options)) {
        if (!opt_.atol_components.empty() && opt_.atol_components.size() != N)
            throw DomainError("dopri5: atol_components must have one entry per component");
    }

    const Dopri5Stats& stats() const { return stats_; }

    /// Integrates from (x0, y0) to x1. `stops` must be ordered in the direction
    /// of integration and lie within [x0, x1]; each one is hit exactly.
    /// Observer signature: void(double x, const State& y). Returns y(x1).
    template <class Rhs, class Observer>
    State integrate(Rhs&& f, double x0, State y, double x1, std::span<const double> stops,
                    Observer&& observe) {
        const double dir = x1 >= x0 ? 1.0 : -1.0;
        double x = x0;
        State k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, y_new{};
        f(x, y, k1);
        ++stats_.evaluations;

        double h = opt_.h_init > 0.0 ? opt_.h_init : initial_step(f, x, y, k1, dir);
        h = std::min(h, std::abs(x1 - x0));
        std::size_t next_stop = 0;
        while (next_stop < stops.size() && dir * (stops[next_stop] - x) <= 0.0) ++next_stop;

        double err_prev = 1e-4;
        bool last_rejected = false;
        long steps = 0;

        while (dir * (x1 - x) > 0.0) {
            if (++steps > opt_.max_steps)
                throw SolverError("dopri5: maximum number of steps exceeded at x = " + std::to_string(x), x);

            const double target = next_stop < stops.size() ? stops[next_stop] : x1;
            bool lands = false;
            double step = dir * h;
            if (dir * (x + step - target) >= 0.0) {
                step = target - x;
                lands = true;
            }
            if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x)) && !lands)
                throw SolverError("dopri5: step size underflow at x = " + std::to_string(x), x);

            // stages
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * (a21 * k1[i]);
            f(x + c2 * step, tmp, k2);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
            f(x + c3 * step, tmp, k3);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            f(x + c4 * step, tmp, k4);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            f(x + c5 * step, tmp, k5);
            for (std::size_t i = 0; i < N; ++i)
                tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            const double x_new = lands ? target : x + step;
            f(x_new, tmp, k6);
            for (std::size_t i = 0; i < N; ++i)
                y_new[i] = y[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            f(x_new, y_new, k7);
            stats_.evaluations += 6;

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double scale = atol(i) + opt_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err += (e / scale) * (e / scale);
            }
            err = std::sqrt(err / static_cast<double>(N));

            if (!std::isfinite(err)) {
                ++stats_.rejected;
                h = 0.2 * std::abs(step);
                last_rejected = true;
                if (h < 1e-14 * std::max(1.0, std::abs(x)))
                    throw SolverError("dopri5: non-finite state (overflow) near x = " + std::to_string(x), x);
                continue;
            }

            if (err <= 1.0) {
                // PI step-size controller (Gustafsson)
                double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
                if (err == 0.0) fac = 5.0;
                fac = std::clamp(fac, 0.2, 5.0);
                if (last_rejected) fac = std::min(fac, 1.0);
                err_prev = std::max(err, 1e-4);
                x = x_new;
                y = y_new;
                k1 = k7;
                ++stats_.accepted;
                last_rejected = false;
                observe(x, static_cast<const State&>(y));
                if (lands && next_stop < stops.size() && x == stops[next_stop]) ++next_stop;
                // keep the unclamped step size when only landing on a stop
                h = lands ? std::max(h, std::abs(step) * fac) : std::abs(step) * fac;
            } else {
                ++stats_.rejected;
                const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
                h = std::abs(step) * fac;
                last_rejected = true;
            }
        }
        return y;
    }

private:
    double atol(std::size_t i) const { return opt_.atol_components.empty() ? opt_.atol : opt_.atol_components[i]; }

    template <class Rhs>
    double initial_step(Rhs& f, double x, const State& y, const State& dy, double dir) {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol(i) + opt_.rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (dy[i] / sc) * (dy[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        State y1{}, dy1{};
        for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + dir * h0 * dy[i];
        f(x + dir * h0, y1, dy1);
        ++stats_.evaluations;
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol(i) + opt_.rtol * std::abs(y[i]);
            d2 += ((dy1[i] - dy[i]) / sc) * ((dy1[i] - dy[i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dmax = std::max(d1, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
        return std::min(100.0 * h0, h1);
    }

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    Dopri5Options opt_;
    Dopri5Stats stats_;
};

}  // namespace isingtau::ode
