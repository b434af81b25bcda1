#include "hw/expansion.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>

namespace hw {
namespace {

constexpr double kPi = M_PI;
constexpr double kPi2Half = M_PI * M_PI / 2.0;
const double kSqrt3 = std::sqrt(3.0);

// Near rho = 1 the numerator of g2~ cancels through third order, so the
// branch formula is evaluated in __float128 (with two extra Newton steps on
// the root) inside this window.
constexpr double kQuadAssistWidth = 0.02;

double horner(const double* c, int n, double v) {
    double s = c[n - 1];
    for (int k = n - 2; k >= 0; --k) s = s * v + c[k];
    return s;
}

// Taylor coefficients about rho = 1 (F in powers of rho-1, G and g2~ in
// powers of 1/rho - 1).
constexpr double kFc[8] = {
    -1.0, -1.0, 3.0 / 2.0, -6.0 / 5.0, 351.0 / 350.0, -108.0 / 125.0,
    256338.0 / 336875.0, -14918256.0 / 21896875.0};
constexpr double kGc[6] = {
    1.0, 1.0 / 5.0, -4.0 / 35.0, 2.0 / 25.0, -1637.0 / 26950.0,
    2111059.0 / 43793750.0};
constexpr double kg2c[5] = {
    -1.0 / 35.0, 0.0, 144.0 / 67375.0, -11952.0 / 4379375.0,
    39204.0 / 13934375.0};

__float128 refine_x1_q(double rho, double x0) {
    const __float128 r = rho;
    __float128 x = x0;
    for (int i = 0; i < 3; ++i)
        x -= (r * sinhq(x) - x) / (r * coshq(x) - 1.0Q);
    return x;
}

__float128 refine_y1_q(double rho, double y0) {
    const __float128 r = rho;
    __float128 y = y0;
    for (int i = 0; i < 3; ++i)
        y -= (y + r * sinq(y) - M_PIq) / (1.0Q + r * cosq(y));
    return y;
}

double g2_branch_quad(double rho) {
    __float128 c; // rho*cosh(x1) or rho*cos(y1)
    if (rho < 1.0)
        c = __float128(rho) * coshq(refine_x1_q(rho, solve_x1(rho)));
    else
        c = __float128(rho) * cosq(refine_y1_q(rho, solve_y1(rho)));
    const __float128 r2 = __float128(rho) * rho;
    if (rho < 1.0) {
        const __float128 num = -12.0Q + 9.0Q * c - 2.0Q * c * c + 5.0Q * r2;
        return static_cast<double>(num / (12.0Q * (c - 1.0Q) * (c - 1.0Q) * (c - 1.0Q)));
    }
    const __float128 num = 12.0Q + 9.0Q * c + 2.0Q * c * c - 5.0Q * r2;
    return static_cast<double>(num / (12.0Q * (1.0Q + c) * (1.0Q + c) * (1.0Q + c)));
}

void require_positive(double rho, const char* what) {
    if (!(rho > 0.0)) throw DomainError(std::string(what) + ": rho must be positive");
}

} // namespace

namespace detail {

double F_branch(double rho) {
    if (rho < 1.0) {
        const double x = solve_x1(rho);
        return 0.5 * x * x - rho * std::cosh(x) + kPi2Half;
    }
    const double y = solve_y1(rho);
    return -0.5 * y * y + rho * std::cos(y) + kPi * y;
}

double F_near1(double rho) { return kPi2Half + horner(kFc, 8, rho - 1.0); }

double Fp_branch(double rho) {
    if (rho < 1.0) return -std::cosh(solve_x1(rho));
    return std::cos(solve_y1(rho));
}

double Fp_near1(double rho) {
    constexpr double c[7] = {kFc[1],     2 * kFc[2], 3 * kFc[3], 4 * kFc[4],
                             5 * kFc[5], 6 * kFc[6], 7 * kFc[7]};
    return horner(c, 7, rho - 1.0);
}

double Fpp_branch(double rho) {
    if (rho < 1.0) {
        const double x = solve_x1(rho);
        const double sh = std::sinh(x);
        return sh * sh / (rho * std::cosh(x) - 1.0);
    }
    const double y = solve_y1(rho);
    const double s = std::sin(y);
    return s * s / (1.0 + rho * std::cos(y));
}

double Fpp_near1(double rho) {
    constexpr double c[6] = {2 * kFc[2],  6 * kFc[3],  12 * kFc[4],
                             20 * kFc[5], 30 * kFc[6], 42 * kFc[7]};
    return horner(c, 6, rho - 1.0);
}

double G_branch(double rho) {
    if (rho < 1.0) {
        const double x = solve_x1(rho);
        return rho * std::sinh(x) / std::sqrt(rho * std::cosh(x) - 1.0);
    }
    const double y = solve_y1(rho);
    return rho * std::sin(y) / std::sqrt(1.0 + rho * std::cos(y));
}

double G_near1(double rho) { return kSqrt3 * horner(kGc, 6, 1.0 / rho - 1.0); }

double g2_branch(double rho) {
    if (std::abs(rho - 1.0) < kQuadAssistWidth) return g2_branch_quad(rho);
    if (rho < 1.0) {
        const double c = rho * std::cosh(solve_x1(rho));
        const double s = c - 1.0;
        return (-12.0 + 9.0 * c - 2.0 * c * c + 5.0 * rho * rho) / (12.0 * s * s * s);
    }
    const double c = rho * std::cos(solve_y1(rho));
    const double s = 1.0 + c;
    return (12.0 + 9.0 * c + 2.0 * c * c - 5.0 * rho * rho) / (12.0 * s * s * s);
}

double g2_near1(double rho) { return horner(kg2c, 5, 1.0 / rho - 1.0); }

} // namespace detail

double exponent_F(double rho) {
    require_positive(rho, "exponent_F");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth) return detail::F_near1(rho);
    return detail::F_branch(rho);
}

double exponent_F_prime(double rho) {
    require_positive(rho, "exponent_F_prime");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth) return detail::Fp_near1(rho);
    return detail::Fp_branch(rho);
}

double exponent_F_second(double rho) {
    require_positive(rho, "exponent_F_second");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth) return detail::Fpp_near1(rho);
    return detail::Fpp_branch(rho);
}

double prefactor_G(double rho) {
    require_positive(rho, "prefactor_G");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth) return detail::G_near1(rho);
    return detail::G_branch(rho);
}

double subleading_g2(double rho) {
    require_positive(rho, "subleading_g2");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth) return detail::g2_near1(rho);
    return detail::g2_branch(rho);
}

double F_asymptotic_small_rho(double rho) {
    const double L = std::log(1.0 / rho);
    const double l2 = std::log(2.0 * L);
    return 0.5 * L * L + L * l2 - L + l2 * l2 + kPi2Half;
}

double F_asymptotic_large_rho(double rho) {
    return rho + kPi * kPi / (2.0 * (1.0 + rho));
}

double G_asymptotic_small_rho(double rho) {
    const double L = std::log(1.0 / rho);
    const double sL = std::sqrt(L);
    return sL - rho * rho * sL + (std::log(2.0 * L) + 1.0) / (2.0 * sL);
}

double G_asymptotic_large_rho(double rho) {
    return kPi * rho / std::pow(1.0 + rho, 1.5);
}

CoreEval core_eval(double rho) {
    require_positive(rho, "core_eval");
    return CoreEval{rho,
                    exponent_F(rho),
                    exponent_F_prime(rho),
                    prefactor_G(rho),
                    subleading_g2(rho),
                    classify_rho(rho)};
}

ThetaApprox theta_hat(double r, double t, bool with_subleading) {
    if (!(r > 0.0) || !(t > 0.0))
        throw DomainError("theta_hat: r and t must be positive");
    const double rho = r * t;
    ThetaApprox out;
    out.rho = rho;
    out.t = t;
    out.log_leading = -(exponent_F(rho) - kPi2Half) / t +
                      std::log(prefactor_G(rho)) - std::log(2.0 * kPi * t);
    out.subleading_factor = 1.0 + 0.5 * t * subleading_g2(rho);
    out.error_bound = std::min(t / 70.0, 1.0);
    double lg = out.log_leading;
    if (with_subleading && out.subleading_factor > 0.0)
        lg += std::log(out.subleading_factor);
    out.value = std::exp(lg);
    if (with_subleading && out.subleading_factor <= 0.0) out.value = 0.0;
    constexpr double kMaxLog = 709.0, kMinLog = -745.0;
    out.overflow = lg > kMaxLog;
    out.underflow = lg < kMinLog;
    return out;
}

double theta_rho1_series(double t, int order) {
    if (!(t > 0.0)) throw DomainError("theta_rho1_series: t must be positive");
    if (order < 0 || order > 2)
        throw DomainError("theta_rho1_series: order must be 0, 1 or 2");
    double corr = 1.0;
    if (order >= 1) corr += kThetaRho1Coeff1.value() * t;
    if (order >= 2) corr += kThetaRho1Coeff2.value() * t * t;
    return kSqrt3 / (2.0 * kPi * t) * std::exp(1.0 / t) * corr;
}

} // namespace hw
