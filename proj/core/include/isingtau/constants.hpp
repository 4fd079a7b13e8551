#pragma once

namespace isingtau {

/// Mathematical constants used throughout, stored to 30+ significant digits.
struct FundamentalConstants {
    double euler_gamma;
    double zeta_prime_minus_one;  // zeta'(-1) = 1/12 - ln(Glaisher)
    double ln_two;
    double ln_pi;
    double sqrt_pi;
};

inline constexpr FundamentalConstants kConstants{
    0.577215664901532860606512090082402431,
    -0.165421143700450929213919660242718,
    0.693147180559945309417232121458176568,
    1.144729885849400174143427351353058712,
    1.772453850905516027298167483341145183,
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLnTwoPi = 1.837877066409345483560659472811235279;

}  // namespace isingtau
