#pragma once

#include "hw/roots.hpp"

namespace hw {

/// Exact rational constant kept in integer form so tests can check it
/// without going through floating point.
struct Rational {
    long long num;
    long long den;
    constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr Rational kG2TildeAtOne{-1, 35};
inline constexpr Rational kThetaRho1Coeff1{-1, 70};
inline constexpr Rational kThetaRho1Coeff2{749033, 1034880000};

/// Saddle-point exponent F(rho):
///   x1^2/2 - rho*cosh(x1) + pi^2/2    (rho < 1)
///   -y1^2/2 + rho*cos(y1) + pi*y1     (rho > 1)
///   pi^2/2 - 1                        (rho = 1)
/// with a Taylor series on |rho-1| <= kNearOneHalfWidth.
double exponent_F(double rho);

/// F'(rho) = -cosh(x1) (rho < 1), cos(y1) (rho > 1), -1 at rho = 1.
double exponent_F_prime(double rho);

/// F''(rho) by implicit differentiation of the root equations:
///   sinh^2(x1)/(rho*cosh(x1) - 1)   (rho < 1)
///   sin^2(y1)/(1 + rho*cos(y1))     (rho > 1),  F''(1) = 3.
double exponent_F_second(double rho);

/// Leading prefactor G(rho); G(1) = sqrt(3).
double prefactor_G(double rho);

/// Relative subleading coefficient g2~(rho); g2~(1) = -1/35, g2~ < 0.
double subleading_g2(double rho);

// Validation-only asymptotic forms (caller picks the regime).
double F_asymptotic_small_rho(double rho); // rho << 1
double F_asymptotic_large_rho(double rho); // rho >> 1
double G_asymptotic_small_rho(double rho);
double G_asymptotic_large_rho(double rho);

struct CoreEval {
    double rho;
    double F;
    double Fp;
    double G;
    double g2t;
    SaddleBranch branch;
};

CoreEval core_eval(double rho);

struct ThetaApprox {
    double rho = 0;
    double t = 0;
    double log_leading = 0;       // log of G(rho)/(2 pi t) * exp(-(F-pi^2/2)/t)
    double value = 0;             // saturated exp, subleading folded in if requested
    double subleading_factor = 1; // 1 + t*g2~(rho)/2
    double error_bound = 0;       // min(t/70, 1)
    bool overflow = false;
    bool underflow = false;
};

/// Small-t saddle-point approximation of the Hartman-Watson integral at
/// rho = r*t, optionally with the O(t) subleading factor.
ThetaApprox theta_hat(double r, double t, bool with_subleading = false);

/// theta(1/t, t) expansion at rho = 1:
///   sqrt(3)/(2 pi t) e^{1/t} (1 - t/70 + 749033/1034880000 t^2), truncated at `order`.
double theta_rho1_series(double t, int order = 2);

namespace detail {
// Direct branch evaluations (rho != 1) and the near-one series, both exposed
// so the two routes can be compared at the band edges.
double F_branch(double rho);
double F_near1(double rho);
double Fp_branch(double rho);
double Fp_near1(double rho);
double Fpp_branch(double rho);
double Fpp_near1(double rho);
double G_branch(double rho);
double G_near1(double rho);
double g2_branch(double rho);
double g2_near1(double rho);
} // namespace detail

} // namespace hw
