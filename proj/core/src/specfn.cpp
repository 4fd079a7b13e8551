#include "isingtau/specfn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "isingtau/constants.hpp"
#include "isingtau/errors.hpp"
#include "isingtau/quadrature.hpp"

namespace isingtau::specfn {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// zeta(k) - 1 for k = 2, 3, ..., 60.
constexpr std::array<double, 59> kZetaMinusOne{
    6.449340668482264364724e-1,  // k = 2
    2.020569031595942853997e-1,  // k = 3
    8.2323233711138191516e-2,  // k = 4
    3.692775514336992633137e-2,  // k = 5
    1.734306198444913971452e-2,  // k = 6
    8.349277381922826839798e-3,  // k = 7
    4.077356197944339378685e-3,  // k = 8
    2.008392826082214417853e-3,  // k = 9
    9.94575127818085337146e-4,  // k = 10
    4.941886041194645587023e-4,  // k = 11
    2.46086553308048298638e-4,  // k = 12
    1.227133475784891467518e-4,  // k = 13
    6.124813505870482925855e-5,  // k = 14
    3.058823630702049355173e-5,  // k = 15
    1.528225940865187173257e-5,  // k = 16
    7.6371976378997622736e-6,  // k = 17
    3.817293264999839856462e-6,  // k = 18
    1.908212716553938925657e-6,  // k = 19
    9.53962033872796113152e-7,  // k = 20
    4.769329867878064631167e-7,  // k = 21
    2.384505027277329900036e-7,  // k = 22
    1.192199259653110730678e-7,  // k = 23
    5.960818905125947961244e-8,  // k = 24
    2.980350351465228018606e-8,  // k = 25
    1.490155482836504123466e-8,  // k = 26
    7.450711789835429491981e-9,  // k = 27
    3.725334024788457054819e-9,  // k = 28
    1.862659723513049006404e-9,  // k = 29
    9.313274324196681828718e-10,  // k = 30
    4.656629065033784072989e-10,  // k = 31
    2.328311833676505492002e-10,  // k = 32
    1.164155017270051977593e-10,  // k = 33
    5.820772087902700889251e-11,  // k = 34
    2.910385044497099686928e-11,  // k = 35
    1.455192189104198423598e-11,  // k = 36
    7.275959835057481014509e-12,  // k = 37
    3.637979547378651190237e-12,  // k = 38
    1.818989650307065947653e-12,  // k = 39
    9.094947840263889282877e-13,  // k = 40
    4.547473783042154027044e-13,  // k = 41
    2.273736845824652515067e-13,  // k = 42
    1.136868407680227849247e-13,  // k = 43
    5.684341987627585614097e-14,  // k = 44
    2.842170976889301846261e-14,  // k = 45
    1.421085482803160674388e-14,  // k = 46
    7.105427395210852705164e-15,  // k = 47
    3.552713691337113736653e-15,  // k = 48
    1.776356843579120414368e-15,  // k = 49
    8.881784210930816192819e-16,  // k = 50
    4.440892103143814118171e-16,  // k = 51
    2.220446050798042399673e-16,  // k = 52
    1.110223025141065655981e-16,  // k = 53
    5.551115124845479753977e-17,  // k = 54
    2.775557562136117127838e-17,  // k = 55
    1.387778780972527508297e-17,  // k = 56
    6.938893904544233558614e-18,  // k = 57
    3.469446952166014987555e-18,  // k = 58
    1.734723476047607360656e-18,  // k = 59
    8.673617380120693743626e-19,  // k = 60
};

// sum_{k>=2} (-1)^k (zeta(k)-1) z^{k+shift} / (k+shift), |z| <= 1/2
double zeta_tail_series(double z, int shift) {
    double sum = 0.0;
    double zk = z * z;  // z^2
    for (int i = 0; i < shift; ++i) zk *= z;
    double sign = 1.0;
    for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
        const int k = static_cast<int>(i) + 2;
        const double term = sign * kZetaMinusOne[i] * zk / (k + shift);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
        zk *= z;
        sign = -sign;
    }
    return sum;
}

double bessel_series(int order, double t) {
    const double gamma = kConstants.euler_gamma;
    const double y = 0.25 * t * t;
    const double log_half = std::log(0.5 * t);
    if (order == 0) {
        double term = 1.0, harmonic = 0.0, sum_i = 1.0, sum_k = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= y / (static_cast<double>(k) * k);
            harmonic += 1.0 / k;
            sum_i += term;
            sum_k += term * harmonic;
            if (term * (1.0 + harmonic) < kEps * 1e-2 * sum_i) break;
        }
        return -(log_half + gamma) * sum_i + sum_k;
    }
    // K_1 = 1/t + ln(t/2) I_1 - (t/4) sum (psi(k+1)+psi(k+2)) y^k / (k!(k+1)!)
    double term = 1.0;            // y^k / (k! (k+1)!)
    double h_k = 0.0, h_k1 = 1.0;  // harmonic numbers H_k, H_{k+1}
    double sum_i = 1.0;
    double sum_psi = (h_k - gamma) + (h_k1 - gamma);
    for (int k = 1; k < 200; ++k) {
        term *= y / (static_cast<double>(k) * (k + 1));
        h_k = h_k1;
        h_k1 += 1.0 / (k + 1);
        sum_i += term;
        const double inc = term * ((h_k - gamma) + (h_k1 - gamma));
        sum_psi += inc;
        if (std::abs(inc) < kEps * 1e-2 * std::abs(sum_psi) && term < kEps * 1e-2 * sum_i) break;
    }
    return 1.0 / t + log_half * 0.5 * t * sum_i - 0.25 * t * sum_psi;
}

// Steed's method (continued fraction CF2, Temme normalisation), valid for t >= 2.
void bessel_steed(double t, double& k0, double& k1) {
    double b = 2.0 * (1.0 + t);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps * 0.5) break;
    }
    h *= a1;
    k0 = std::sqrt(kPi / (2.0 * t)) * std::exp(-t) / s;
    k1 = k0 * (t + 0.5 - h) / t;
}

double stirling_ln_gamma(double x) {
    constexpr std::array<double, 8> c{1.0 / 12.0,     -1.0 / 360.0,      1.0 / 1260.0,
                                      -1.0 / 1680.0,  1.0 / 1188.0,      -691.0 / 360360.0,
                                      1.0 / 156.0,    -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0, p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * kLnTwoPi + series;
}

}  // namespace

double bessel_k(int order, double t) {
    if (order != 0 && order != 1) throw DomainError("bessel_k: order must be 0 or 1");
    if (!(t > 0.0)) throw DomainError("bessel_k: t must be positive, got " + std::to_string(t));
    if (t <= 2.0) return bessel_series(order, t);
    if (t > 750.0) return 0.0;
    double k0 = 0.0, k1 = 0.0;
    bessel_steed(t, k0, k1);
    return order == 0 ? k0 : k1;
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be positive, got " + std::to_string(x));
    if (!std::isfinite(x)) return x;
    const double gamma = kConstants.euler_gamma;
    if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
    if (x < 1.5) {
        const double z = x - 1.0;
        return -std::log1p(z) + z * (1.0 - gamma) + zeta_tail_series(z, 0);
    }
    if (x < 2.5) {
        const double z = x - 2.0;
        return z * (1.0 - gamma) + zeta_tail_series(z, 0);
    }
    if (x < 10.0) {
        double y = x, prod = 1.0;
        while (y >= 2.5) {
            y -= 1.0;
            prod *= y;
        }
        return ln_gamma(y) + std::log(prod);
    }
    return stirling_ln_gamma(x);
}

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: x must be positive, got " + std::to_string(x));
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    constexpr std::array<double, 7> c{1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
                                      1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    const double inv2 = 1.0 / (x * x);
    double series = 0.0, p = inv2;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

double ln_barnes_g(double x) {
    if (!(x > 0.0 && x < 3.0))
        throw DomainError("ln_barnes_g: x must lie in (0, 3), got " + std::to_string(x));
    if (x < 0.5) return ln_barnes_g(x + 1.0) - ln_gamma(x);   // G(x) = G(1+x)/Gamma(x)
    if (x > 1.5) return ln_gamma(x - 1.0) + ln_barnes_g(x - 1.0);  // G(x) = Gamma(x-1) G(x-1)
    // ln G(1+z), |z| <= 1/2
    const double z = x - 1.0;
    if (z == 0.0) return 0.0;
    const double gamma = kConstants.euler_gamma;
    return 0.5 * z * kLnTwoPi - 0.5 * (z + (1.0 + gamma) * z * z) +
           (std::log1p(z) - z + 0.5 * z * z) + zeta_tail_series(z, 1);
}

double barnes_integral_residual(double z) {
    if (!(z > 0.0 && z <= 1.0))
        throw DomainError("barnes_integral_residual: z must lie in (0, 1]");
    const auto lhs = quad::integrate_adaptive([](double x) { return ln_gamma(1.0 + x); }, 0.0, z, 1e-14);
    const double rhs = 0.5 * z * kLnTwoPi - 0.5 * z * (z + 1.0) + z * ln_gamma(1.0 + z) - ln_barnes_g(1.0 + z);
    return std::abs(lhs.value - rhs);
}

BcIntegral bc_integral(double t, double nu, bool with_derivative) {
    if (!(t > 0.0)) throw DomainError("bc_integral: t must be positive");
    if (!(nu > -0.5)) throw DomainError("bc_integral: nu must exceed -1/2 (integral diverges at y=1)");

    static const quad::Rule panel = quad::gauss_legendre(24);

    // Integrand is negligible (relative to its value at 0) beyond t (cosh th - 1) = 46.
    const double theta_max = std::acosh(1.0 + 46.0 / t);
    const double two_nu = 2.0 * nu;

    double value = 0.0, deriv = 0.0;
    auto add_panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
            const double th = mid + half * panel.nodes[i];
            const double ch = std::cosh(th);
            double f = std::exp(-t * ch) * half * panel.weights[i];
            if (two_nu != 0.0) f *= std::pow(std::tanh(0.5 * th), two_nu);
            value += f;
            deriv -= ch * f;
        }
    };

    // Geometric panels towards the tanh^{2nu} endpoint behaviour at th = 0.
    const double theta0 = std::min(1.0, theta_max);
    constexpr double kEpsilon = 1e-8;
    double upper = theta0;
    while (upper > kEpsilon) {
        const double lower = std::max(0.25 * upper, kEpsilon);
        add_panel(lower, upper);
        upper = lower;
    }
    // [0, eps]: tanh(th/2)^{2nu} ~ (th/2)^{2nu}, e^{-t cosh th} ~ e^{-t}
    {
        const double lead = std::exp(-t) * std::pow(0.5, two_nu) * std::pow(kEpsilon, two_nu + 1.0) / (two_nu + 1.0);
        value += lead;
        deriv -= lead;
    }
    // Unit-width panels over [theta0, theta_max].
    double a = theta0;
    while (a < theta_max) {
        const double b = std::min(theta_max, a + 1.0);
        add_panel(a, b);
        a = b;
    }
    return {value, with_derivative ? deriv : 0.0};
}

}  // namespace isingtau::specfn
