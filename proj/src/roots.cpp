#include "hw/roots.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hw {
namespace {

struct Eval {
    double f;
    double df;
};

// Safeguarded Newton: keeps the bracket, falls back to bisection whenever the
// Newton step leaves it or fails to halve the previous step (rtsafe scheme).
template <class FDF>
double newton_bisect(FDF&& fdf, double lo, double hi, double flo, double fhi,
                     const RootConfig& cfg, const char* what) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoRootError(std::string(what) + ": endpoints do not bracket a root");
    double xl = lo, xh = hi;
    if (flo > 0.0) std::swap(xl, xh); // orient so f(xl) < 0 < f(xh)

    double rts = 0.5 * (lo + hi);
    double dxold = std::abs(hi - lo);
    double dx = dxold;
    Eval e = fdf(rts);
    for (int it = 0; it < cfg.max_iter; ++it) {
        const bool newton_ok =
            (((rts - xh) * e.df - e.f) * ((rts - xl) * e.df - e.f) < 0.0) &&
            (std::abs(2.0 * e.f) <= std::abs(dxold * e.df));
        if (newton_ok) {
            dxold = dx;
            dx = e.f / e.df;
            const double tmp = rts;
            rts -= dx;
            if (tmp == rts) return rts;
        } else {
            dxold = dx;
            dx = 0.5 * (xh - xl);
            rts = xl + dx;
            if (xl == rts) return rts;
        }
        if (std::abs(dx) < cfg.rel_tol * std::abs(rts) + cfg.abs_tol) return rts;
        e = fdf(rts);
        if (e.f < 0.0)
            xl = rts;
        else
            xh = rts;
    }
    throw ConvergenceError(std::string(what) + ": no convergence in max_iter");
}

// rho*sinh(x) without overflow for large x (rho*sinh(x) = exp(x+log(rho/2))(1-e^{-2x})).
double rho_sinh(double rho, double x) {
    if (x > 350.0)
        return std::exp(x + std::log(rho) - M_LN2) * (1.0 - std::exp(-2.0 * x));
    return rho * std::sinh(x);
}

double rho_cosh(double rho, double x) {
    if (x > 350.0)
        return std::exp(x + std::log(rho) - M_LN2) * (1.0 + std::exp(-2.0 * x));
    return rho * std::cosh(x);
}

double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    }
    return std::sin(z) / z;
}

} // namespace

double solve_x1(double rho, const RootConfig& cfg) {
    if (!(rho > 0.0 && rho < 1.0))
        throw DomainError("solve_x1: rho must lie in (0,1)");
    const double L = std::log(1.0 / rho);
    double hi = L + std::log1p(2.0 * L) + 2.0;
    auto fdf = [rho](double x) {
        return Eval{rho_sinh(rho, x) - x, rho_cosh(rho, x) - 1.0};
    };
    double lo = std::numeric_limits<double>::min();
    double fhi = fdf(hi).f;
    for (int k = 0; k < 8 && !(fhi > 0.0); ++k) { // asymptotic bound; expand if ever short
        hi *= 1.6;
        fhi = fdf(hi).f;
    }
    return newton_bisect(fdf, lo, hi, (rho - 1.0) * lo, fhi, cfg, "solve_x1");
}

double solve_y1(double rho, const RootConfig& cfg) {
    if (!(rho > 1.0))
        throw DomainError("solve_y1: rho must exceed 1");
    auto fdf = [rho](double y) {
        return Eval{y + rho * std::sin(y) - M_PI, 1.0 + rho * std::cos(y)};
    };
    // f increases up to y_c = acos(-1/rho) and y1 < y_c; f(y_c) > 0 for rho > 1.
    double lo = 0.5 * M_PI / (1.0 + rho);
    double hi = std::acos(-1.0 / rho);
    double flo = fdf(lo).f;
    double fhi = fdf(hi).f;
    if (!(fhi > 0.0)) { // roundoff guard very close to rho = 1
        hi = std::nextafter(M_PI, 0.0);
        fhi = fdf(hi).f;
    }
    return newton_bisect(fdf, lo, hi, flo, fhi, cfg, "solve_y1");
}

double solve_beta(double a, const RootConfig& cfg) {
    if (!(a >= 1.0))
        throw DomainError("solve_beta: a must be >= 1");
    if (a == 1.0) return 0.0;
    auto fdf = [a](double b) {
        return Eval{std::sinh(b) - a * b, std::cosh(b) - a};
    };
    const double lo = std::numeric_limits<double>::min();
    double hi = std::sqrt(6.0 * (a - 1.0)) + 1.0;
    if (a > 3.0) {
        const double l = std::log(2.0 * a);
        hi = l + std::log(l + 2.0) + 2.0;
    }
    double fhi = fdf(hi).f;
    for (int k = 0; k < 60 && !(fhi > 0.0); ++k) {
        hi = std::min(2.0 * hi, 705.0);
        fhi = fdf(hi).f;
    }
    return newton_bisect(fdf, lo, hi, (1.0 - a) * lo, fhi, cfg, "solve_beta");
}

double solve_xi(double a, const RootConfig& cfg) {
    if (!(a > 0.0 && a <= 1.0))
        throw DomainError("solve_xi: a must lie in (0,1]");
    if (a == 1.0) return 0.0;
    auto fdf = [a](double xi) {
        const double z = 2.0 * xi;
        double df;
        if (std::abs(z) < 1e-4)
            df = -4.0 * xi / 3.0 * (1.0 - 0.3 * z * z / 4.0);
        else
            df = (z * std::cos(z) - std::sin(z)) / (2.0 * xi * xi);
        return Eval{sinc(z) - a, df};
    };
    const double lo = std::numeric_limits<double>::min();
    const double hi = 0.5 * M_PI;
    return newton_bisect(fdf, lo, hi, 1.0 - a, -a, cfg, "solve_xi");
}

double solve_rho_star(double a, const RootConfig& cfg) {
    if (!(a > 0.0))
        throw DomainError("solve_rho_star: a must be positive");
    const double la = std::log(a);
    if (std::abs(la) <= kNearOneHalfWidth) {
        const double v = a - 1.0;
        return 1.0 + v * (-0.25 + v * (19.0 / 160.0 - v * (1511.0 / 22400.0)));
    }
    if (a > 1.0) {
        // sinh(2x)/(2x) = a, then rho* = cosh(x)/a
        auto fdf = [a](double x) {
            return Eval{std::sinh(2.0 * x) - 2.0 * a * x,
                        2.0 * std::cosh(2.0 * x) - 2.0 * a};
        };
        const double lo = std::numeric_limits<double>::min();
        double hi = 0.5 * (std::sqrt(6.0 * (a - 1.0)) + 1.0);
        if (a > 3.0) {
            const double l = std::log(4.0 * a);
            hi = 0.5 * (l + std::log(l + 2.0) + 2.0);
        }
        double fhi = fdf(hi).f;
        for (int k = 0; k < 60 && !(fhi > 0.0); ++k) {
            hi = std::min(2.0 * hi, 352.0);
            fhi = fdf(hi).f;
        }
        const double x = newton_bisect(fdf, lo, hi, 2.0 * (1.0 - a) * lo, fhi,
                                       cfg, "solve_rho_star");
        return std::cosh(x) / a;
    }
    // y - sin(y)cos(y)/a = pi on (pi/2, pi); rho* = -cos(y)/a
    auto fdf = [a](double y) {
        return Eval{y - std::sin(2.0 * y) / (2.0 * a) - M_PI,
                    1.0 - std::cos(2.0 * y) / a};
    };
    const double lo = 0.5 * M_PI * (1.0 + 1e-15);
    double hi = M_PI - 0.5 * std::acos(a);
    double fhi = fdf(hi).f;
    if (!(fhi > 0.0)) {
        hi = std::nextafter(M_PI, 0.0);
        fhi = fdf(hi).f;
    }
    const double y = newton_bisect(fdf, lo, hi, fdf(lo).f, fhi, cfg, "solve_rho_star");
    return -std::cos(y) / a;
}

double solve_u0(double r, double t, const RootConfig& cfg) {
    if (!(r > 0.0) || !(t > 0.0))
        throw DomainError("solve_u0: r and t must be positive");
    const double rg = std::log(r / (2.0 * M_SQRT2));
    auto rhs = [rg](double u) {
        const double s = std::sqrt(2.0 * u);
        return std::log(u) / (2.0 * s) - rg / s + 1.0 / (4.0 * u);
    };
    auto fdf = [rg, rhs, t](double u) {
        const double d = -(std::log(u) - 2.0 - 2.0 * rg) /
                             (4.0 * M_SQRT2 * u * std::sqrt(u)) -
                         1.0 / (4.0 * u * u);
        return Eval{rhs(u) - t, d};
    };
    // small-t asymptote u0 ~ log^2(1/t)/(2t^2) seeds the bracket
    double seed = 1.0 / (4.0 * t);
    if (t < 1.0) {
        const double l = std::log(1.0 / t);
        seed = std::max(seed, l * l / (2.0 * t * t));
    }
    double lo = seed / 16.0, hi = seed * 16.0;
    double flo = fdf(lo).f, fhi = fdf(hi).f;
    for (int k = 0; k < 24 && (flo > 0.0) == (fhi > 0.0); ++k) {
        if (flo > 0.0) { // rhs above t on both ends: move right
            lo = hi;
            flo = fhi;
            hi *= 16.0;
            fhi = fdf(hi).f;
        } else {
            hi = lo;
            fhi = flo;
            lo /= 16.0;
            flo = fdf(lo).f;
        }
        if (hi > 1e15 || lo < 1e-15) break;
    }
    if ((flo > 0.0) == (fhi > 0.0))
        throw NoRootError("solve_u0: no sign change located on the admissible range");
    return newton_bisect(fdf, lo, hi, flo, fhi, cfg, "solve_u0");
}

SaddleBranch classify_rho(double rho, const RootConfig& cfg) {
    if (!(rho > 0.0))
        throw DomainError("classify_rho: rho must be positive");
    if (std::abs(rho - 1.0) <= kNearOneHalfWidth)
        return SaddleBranch{Branch::NearOne, rho, std::nullopt};
    if (rho < 1.0)
        return SaddleBranch{Branch::Below1, rho, solve_x1(rho, cfg)};
    return SaddleBranch{Branch::Above1, rho, solve_y1(rho, cfg)};
}

} // namespace hw
