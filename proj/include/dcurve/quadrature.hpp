#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dcurve {

// 15-point Gauss-Legendre rule on [-1,1].
inline constexpr double kGl15Nodes[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double kGl15Weights[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename F>
double gl15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 15; ++i) {
        acc += kGl15Weights[i] * f(mid + half * kGl15Nodes[i]);
    }
    return acc * half;
}

template <typename F>
double gl15_panels(const F& f, double a, double b, std::size_t panels) {
    if (panels == 0) panels = 1;
    const double w = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        acc += gl15(f, a + w * static_cast<double>(k), a + w * static_cast<double>(k + 1));
    }
    return acc;
}

namespace detail {
template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double rel_tol, double abs_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 ||
        std::abs(delta) <= 15.0 * (abs_tol + rel_tol * std::abs(left + right))) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, rel_tol, 0.5 * abs_tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, rel_tol, 0.5 * abs_tol, depth - 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double rel_tol = 1e-11,
                        double abs_tol = 0.0, int max_depth = 60) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol, abs_tol, max_depth);
}

/// Trapezoid rule on an irregular grid.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("trapezoid: need matching grids with >= 2 points");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    }
    return acc;
}

/// Integral of |y(x)| for a piecewise-linear y: exact, with sign-crossing
/// splits inside cells.
inline double integrate_abs_pl(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("integrate_abs_pl: need matching grids with >= 2 points");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        const double y0 = y[i];
        const double y1 = y[i + 1];
        if (y0 * y1 >= 0.0) {
            acc += 0.5 * (std::abs(y0) + std::abs(y1)) * h;
        } else {
            const double c = y0 / (y0 - y1);  // crossing offset in [0,1]
            acc += 0.5 * (std::abs(y0) * c + std::abs(y1) * (1.0 - c)) * h;
        }
    }
    return acc;
}

/// Integral of max(y(x), 0) for piecewise-linear y, exact.
inline double integrate_pos_pl(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("integrate_pos_pl: need matching grids with >= 2 points");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        const double y0 = y[i];
        const double y1 = y[i + 1];
        if (y0 >= 0.0 && y1 >= 0.0) {
            acc += 0.5 * (y0 + y1) * h;
        } else if (y0 <= 0.0 && y1 <= 0.0) {
            // nothing
        } else if (y0 > 0.0) {
            const double c = y0 / (y0 - y1);
            acc += 0.5 * y0 * c * h;
        } else {
            const double c = y0 / (y0 - y1);
            acc += 0.5 * y1 * (1.0 - c) * h;
        }
    }
    return acc;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    v.back() = hi;
    return v;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("logspace: need 0 < lo < hi");
    std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
    for (double& t : v) t = std::exp(t);
    v.back() = hi;
    return v;
}

}  // namespace dcurve
