#include "dcurve/curve.hpp"

#include <cmath>
#include <stdexcept>

#include "dcurve/math.hpp"

namespace dcurve {

namespace {

void check_t(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("Dobrushin curve: t must lie in [0,1]");
    }
}

}  // namespace

DobrushinCurve::DobrushinCurve(NoiseModel noise, CostFunction cost, double budget,
                               std::size_t theta_grid_points)
    : noise_(std::move(noise)), cost_(cost), budget_(budget) {
    if (!(budget > 0.0)) throw std::invalid_argument("Dobrushin curve: budget must be > 0");
    if (noise_.family() == NoiseModel::Family::gridded) {
        const double span = noise_.grid_x().back() - noise_.grid_x().front();
        lb_curve_ = ThetaCurve::sample_lb(noise_, span, theta_grid_points);
        env_curve_ = concave_envelope(*lb_curve_);
    }
}

double DobrushinCurve::shift_at(double t) const {
    const double ratio = budget_ / t;  // t > 0 guaranteed by callers
    return 2.0 * cost_.inverse(ratio);
}

double DobrushinCurve::upper(double t) const {
    check_t(t);
    if (t == 0.0) return 0.0;
    const double s = shift_at(t);
    const double th = env_curve_ ? env_curve_->eval(s) : theta(noise_, s);
    return t * th;
}

double DobrushinCurve::lower(double t) const {
    check_t(t);
    if (t == 0.0) return 0.0;
    const double s = shift_at(t);
    const double th = lb_curve_ ? lb_curve_->eval(s) : theta_lb(noise_, s);
    return t * th;
}

double DobrushinCurve::upper_gap(double t) const {
    check_t(t);
    if (t == 0.0) return 0.0;
    const double s = shift_at(t);
    if (env_curve_) return t * (1.0 - env_curve_->eval(s));
    return t * theta_tail(noise_, s);
}

double ftv_gaussian(double budget, double t, const CostFunction& cost) {
    if (!(budget > 0.0)) throw std::domain_error("ftv_gaussian: budget must be > 0");
    check_t(t);
    if (t == 0.0) return 0.0;
    return t * (1.0 - 2.0 * gauss_q(cost.inverse(budget / t)));
}

std::vector<double> compose_curves(std::span<const DobrushinCurve> stages, double t0) {
    if (stages.empty()) throw std::invalid_argument("compose_curves: empty stage list");
    check_t(t0);
    std::vector<double> out;
    out.reserve(stages.size());
    double t = t0;
    for (const auto& stage : stages) {
        t = stage.upper(t);
        out.push_back(t);
    }
    return out;
}

}  // namespace dcurve
