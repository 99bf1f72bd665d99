#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dcurve {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

/// Fault-injection hook for the verification suite: an additive perturbation
/// applied to gauss_q. Always zero in normal operation.
inline double& q_fault_offset() {
    static double offset = 0.0;
    return offset;
}

inline double gauss_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

/// Gaussian complementary CDF, Q(x) = P[N(0,1) > x].
inline double gauss_q(double x) {
    double q = 0.5 * std::erfc(x / kSqrt2);
    if (q_fault_offset() != 0.0) {
        q = std::min(1.0, std::max(0.0, q + q_fault_offset()));
    }
    return q;
}

inline double gauss_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Inverse of gauss_q on (0,1). Newton iteration on log Q with a bisection
/// safeguard; stable deep in the tail because d/dx log Q = -phi/Q stays
/// well-conditioned.
inline double gauss_q_inv(double y) {
    if (!(y > 0.0 && y < 1.0)) {
        throw std::domain_error("gauss_q_inv: argument must lie in (0,1)");
    }
    if (y == 0.5) return 0.0;
    if (y > 0.5) return -gauss_q_inv(1.0 - y);

    double lo = 0.0;          // Q(lo) >= y
    double hi = 2.0;          // grow until Q(hi) <= y
    while (gauss_q(hi) > y && hi < 40.0) hi *= 1.5;
    double x = std::sqrt(std::max(0.0, -2.0 * std::log(2.5 * y)));
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double q = gauss_q(x);
        if (q >= y) lo = x; else hi = x;
        const double phi = gauss_pdf(x);
        double step;
        if (q > 0.0 && phi > 0.0) {
            step = (std::log(q) - std::log(y)) * q / phi;
        } else {
            step = 0.0;
        }
        double next = x + step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-13 * (1.0 + std::abs(x))) { x = next; break; }
        x = next;
    }
    return x;
}

/// Binary entropy in nats; h(0) = h(1) = 0.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::domain_error("binary_entropy: argument must lie in [0,1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace dcurve
