#pragma once

#include "hw/errors.hpp"

namespace hw {

struct QuadResult {
    double value = 0;
    double abs_err_est = 0;
    int n_halfperiods = 0;
    bool converged = false;
};

/// Direct evaluation of the Hartman-Watson integral
///   theta(r,t) = r/sqrt(2 pi^3 t) e^{pi^2/(2t)} int_0^inf
///                e^{-xi^2/(2t)} e^{-r cosh xi} sinh(xi) sin(pi xi/t) dxi
/// by half-period panel quadrature. The alternating panels cancel by many
/// orders of magnitude at small t, so the accumulation runs in __float128;
/// converged=false flags results with fewer than ~3 significant digits left
/// (in practice t below roughly 0.15).
QuadResult theta_numeric(double r, double t, double tol = 1e-10);

struct GerholdResult {
    double u0 = 0;
    double value = 0; // meaningful only when valid
    bool valid = false;
    double t_max = 0; // largest t with positive radicand, at fixed r
};

/// Fixed-r small-t approximation built on the root u0(t):
///   theta_G = sqrt(e)/pi sqrt(u0/(log u0 - 2 - 2 rg)) e^{-t u0 + sqrt(2 u0)},
/// rg = log(r/(2 sqrt 2)); valid while log(u0) - 2 - 2 rg > 0.
GerholdResult theta_gerhold(double r, double t);

double bessel_I0(double x);
double bessel_K0(double x);

enum class ThetaMethod { Asym, Numeric };

/// Hartman-Watson density theta(r,t)/I0(r) with the chosen theta evaluator.
double hw_density(double r, double t, ThetaMethod method, double tol = 1e-10);

struct TailCoeff {
    double approx; // e^{-r}/(2 sqrt r), the t^{-3/2} coefficient of theta_hat
    double exact;  // K0(r)/sqrt(2 pi), the exact large-t coefficient
};

TailCoeff theta_tail_coeff(double r);

} // namespace hw
