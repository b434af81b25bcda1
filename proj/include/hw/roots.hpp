#pragma once

#include <optional>

#include "hw/errors.hpp"

namespace hw {

struct RootConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300; // absolute floor, keeps bisection meaningful near 0
    int max_iter = 200;
};

enum class Branch { Below1, NearOne, Above1 };

/// Half-width of the band around rho = 1 where direct root solving loses
/// roughly half the significant digits to cancellation and series are used.
inline constexpr double kNearOneHalfWidth = 1e-3;

struct SaddleBranch {
    Branch branch;
    double rho;
    std::optional<double> root; // x1 if Below1, y1 if Above1
};

/// Solve rho*sinh(x)/x = 1 for x > 0, 0 < rho < 1. Strictly decreasing in rho.
double solve_x1(double rho, const RootConfig& cfg = {});

/// Solve y + rho*sin(y) = pi for the root in (0, pi), rho > 1.
/// y1 -> pi as rho -> 1+, y1 -> 0 as rho -> inf.
double solve_y1(double rho, const RootConfig& cfg = {});

/// Solve sinh(beta)/beta = a for beta >= 0, a >= 1 (beta = 0 at a = 1).
double solve_beta(double a, const RootConfig& cfg = {});

/// Solve sin(2 xi)/(2 xi) = a for xi in [0, pi/2), 0 < a <= 1.
double solve_xi(double a, const RootConfig& cfg = {});

/// Minimizer rho* in (0, pi/2] of H(rho) = (1+a^2 rho^2)/(2a) - pi^2/2 + F(rho),
/// in closed form from the branch root equations:
///   a >= 1:  rho* = cosh(x)/a    with sinh(2x)/(2x) = a
///   a <= 1:  rho* = -cos(y)/a    with y - sin(y)cos(y)/a = pi, y in (pi/2, pi]
double solve_rho_star(double a, const RootConfig& cfg = {});

/// Solve t = log(u)/(2 sqrt(2u)) - rg/sqrt(2u) + 1/(4u) with rg = log(r/(2 sqrt 2)).
double solve_u0(double r, double t, const RootConfig& cfg = {});

/// Classify rho against the near-one band and attach the branch root.
SaddleBranch classify_rho(double rho, const RootConfig& cfg = {});

} // namespace hw
