#include "hw/reference.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "hw/expansion.hpp"
#include "hw/roots.hpp"

namespace hw {
namespace {

using quad = __float128;

constexpr double kEpsQuad = 1.93e-34;

struct GaussRule {
    std::vector<quad> nodes;   // on (-1, 1)
    std::vector<quad> weights;
};

// Gauss-Legendre rule by Newton iteration on the Legendre recurrence.
GaussRule make_gauss(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        quad z = cosq(M_PIq * (quad(i) + 0.75Q) / (quad(n) + 0.5Q));
        quad pp = 0;
        for (int it = 0; it < 60; ++it) {
            quad p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                const quad p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            pp = n * (z * p0 - p1) / (z * z - 1);
            const quad dz = p0 / pp;
            z -= dz;
            if (fabsq(dz) < 1e-35Q) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = r.weights[n - 1 - i] = 2.0Q / ((1 - z * z) * pp * pp);
    }
    return r;
}

const GaussRule& gauss24() {
    static const GaussRule r = make_gauss(24);
    return r;
}

struct PanelSum {
    quad sum = 0;
    quad max_partial = 0;
    int n_halfperiods = 0;
    int n_panels = 0;
};

// Integrate e^{-xi^2/(2t) - r cosh xi} sinh(xi) sin(pi xi/t) over [0, inf).
// Panels break at the sine zeros k*t and are further capped so that the
// envelope decays by at most ~e^2.5 per panel, which keeps the 24-point rule
// at full quad accuracy.
PanelSum oscillatory_sum(double r, double t, int subdivide) {
    const quad rq = r, tq = t;
    const quad omega = M_PIq / tq;
    const GaussRule& gr = gauss24();

    auto integrand = [&](quad xi) -> quad {
        const quad expo = -xi * xi / (2 * tq) - rq * coshq(xi);
        if (expo < -11300.0Q) return 0;
        return expq(expo) * sinhq(xi) * sinq(omega * xi);
    };
    auto log_envelope = [&](double xi) {
        return -xi * xi / (2 * t) - r * std::cosh(xi) +
               std::log(std::sinh(std::max(xi, 1e-300)));
    };
    auto rate = [&](double xi) { return 1.0 + xi / t + r * std::sinh(xi); };

    PanelSum out;
    double xi = 0.0;
    double peak = -1e308;
    int k = 1; // next sine zero index
    for (int guard = 0; guard < 2000000; ++guard) {
        // width capped by the local envelope decay rate
        double h = 2.5 / rate(xi);
        h = 2.5 / rate(xi + std::min(h, 2.5 / rate(xi)));
        double next = std::min(xi + h, k * t);
        if (next <= xi) next = std::nextafter(k * t, 1e308);
        for (int s = 0; s < subdivide; ++s) {
            const double a = xi + (next - xi) * s / subdivide;
            const double b = xi + (next - xi) * (s + 1) / subdivide;
            const quad mid = (quad(a) + quad(b)) / 2, half = (quad(b) - quad(a)) / 2;
            quad acc = 0;
            for (int i = 0; i < 24; ++i)
                acc += gr.weights[i] * integrand(mid + half * gr.nodes[i]);
            out.sum += acc * half;
            out.max_partial = std::max(out.max_partial, fabsq(out.sum));
            ++out.n_panels;
        }
        xi = next;
        if (xi >= k * t) {
            ++k;
            ++out.n_halfperiods;
        }
        const double le = log_envelope(xi);
        peak = std::max(peak, le);
        if (xi > 1.0 && le < peak - 160.0) break;
    }
    return out;
}

// log(x) for positive __float128 without leaving quad precision
double log_from_quad(quad x) { return static_cast<double>(logq(x)); }

// ---- modified Bessel functions -------------------------------------------

// I0 power series; no cancellation, full double accuracy for x <= ~40.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= q / (double(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// I0 asymptotic series e^x/sqrt(2 pi x) sum_k mu_k / x^k for large x.
double i0_asymptotic(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double next = term * double(2 * k - 1) * (2 * k - 1) / (8.0 * k * x);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

// K0 via the integral representation K0(x) = e^{-x} int_0^inf e^{-x(cosh u - 1)} du,
// panel Gauss quadrature with rate-capped widths. Positive integrand, so the
// sum carries full double accuracy on the whole domain of interest.
double k0_integral(double x) {
    static const GaussRule& gr = gauss24();
    auto coshm1 = [](double u) {
        const double s = std::sinh(0.5 * u);
        return 2.0 * s * s;
    };
    double sum = 0.0;
    double u = 0.0;
    const double drop = 760.0; // e^{-760} below double underflow
    while (x * coshm1(u) < drop) {
        const double rate = 1.0 + x * std::sinh(u + 0.25);
        const double h = std::min(0.5, 3.0 / rate);
        const double mid = u + 0.5 * h, half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 24; ++i) {
            const double ui = mid + half * static_cast<double>(gr.nodes[i]);
            acc += static_cast<double>(gr.weights[i]) * std::exp(-x * coshm1(ui));
        }
        sum += acc * half;
        u += h;
    }
    return std::exp(-x) * sum;
}

} // namespace

QuadResult theta_numeric(double r, double t, double tol) {
    if (!(r > 0.0) || !(t > 0.0))
        throw DomainError("theta_numeric: r and t must be positive");
    QuadResult out;
    const PanelSum coarse = oscillatory_sum(r, t, 1);
    const PanelSum fine = oscillatory_sum(r, t, 2);
    out.n_halfperiods = std::max(1, fine.n_halfperiods);

    const quad S = fine.sum;
    const quad M = std::max(fine.max_partial, quad(1e-4932));
    const quad noise = kEpsQuad * M * fine.n_panels;
    const quad refine = fabsq(fine.sum - coarse.sum);
    const bool precision_ok = fabsq(S) > 1000.0Q * noise;

    // log prefactor r/sqrt(2 pi^3 t) e^{pi^2/(2t)}
    const double log_pref = std::log(r) - 0.5 * std::log(2.0 * M_PI * M_PI * M_PI * t) +
                            M_PI * M_PI / (2.0 * t);
    const double sign = S < 0 ? -1.0 : 1.0;
    if (S != 0.0Q)
        out.value = sign * std::exp(log_pref + log_from_quad(fabsq(S)));
    const quad err_q = refine + noise;
    if (err_q > 0.0Q)
        out.abs_err_est = std::exp(log_pref + log_from_quad(err_q));
    out.converged = precision_ok && out.abs_err_est <= tol * std::abs(out.value);
    return out;
}

GerholdResult theta_gerhold(double r, double t) {
    if (!(r > 0.0) || !(t > 0.0))
        throw DomainError("theta_gerhold: r and t must be positive");
    const double rg = std::log(r / (2.0 * M_SQRT2));
    GerholdResult out;
    out.u0 = solve_u0(r, t);
    // validity boundary: u0 decreasing in t, radicand positive iff u0 > e^{2+2rg}
    const double u_crit = std::exp(2.0 + 2.0 * rg);
    const double s = std::sqrt(2.0 * u_crit);
    out.t_max = std::log(u_crit) / (2.0 * s) - rg / s + 1.0 / (4.0 * u_crit);
    const double den = std::log(out.u0) - 2.0 - 2.0 * rg;
    out.valid = den > 0.0;
    if (out.valid)
        out.value = std::sqrt(M_E) / M_PI * std::sqrt(out.u0 / den) *
                    std::exp(-t * out.u0 + std::sqrt(2.0 * out.u0));
    else
        out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
}

double bessel_I0(double x) {
    x = std::abs(x);
    return x <= 40.0 ? i0_series(x) : i0_asymptotic(x);
}

double bessel_K0(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_K0: x must be positive");
    return k0_integral(x);
}

double hw_density(double r, double t, ThetaMethod method, double tol) {
    if (!(r > 0.0) || !(t > 0.0))
        throw DomainError("hw_density: r and t must be positive");
    double th;
    if (method == ThetaMethod::Asym) {
        th = theta_hat(r, t, true).value;
    } else {
        const QuadResult q = theta_numeric(r, t, tol);
        if (!q.converged)
            throw PrecisionLossError("hw_density: numeric theta lost precision");
        th = q.value;
    }
    return th / bessel_I0(r);
}

TailCoeff theta_tail_coeff(double r) {
    return TailCoeff{std::exp(-r) / (2.0 * std::sqrt(r)),
                     bessel_K0(r) / std::sqrt(2.0 * M_PI)};
}

} // namespace hw
