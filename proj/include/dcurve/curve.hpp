#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dcurve/cost.hpp"
#include "dcurve/noise.hpp"

namespace dcurve {

/// Certified bounds on the Dobrushin curve F_TV(t) of an additive-noise
/// channel under the average cost budget a:
///
///   lower(t) = t * theta_lb(2 M^{-1}(a/t))
///   upper(t) = t * theta_c (2 M^{-1}(a/t))
///
/// For the named noise families theta is concave, both sides coincide and
/// are evaluated in closed form. Gridded models cache a sampled theta_lb
/// curve and its concave envelope at construction; evaluations beyond the
/// cached span clamp to the last value.
class DobrushinCurve {
  public:
    DobrushinCurve(NoiseModel noise, CostFunction cost, double budget,
                   std::size_t theta_grid_points = 4097);

    double upper(double t) const;
    double lower(double t) const;

    /// t - upper(t), kept accurate deep in the tail where upper(t)/t rounds
    /// to 1 (this is the decrement map of the decay iteration).
    double upper_gap(double t) const;

    double budget() const { return budget_; }
    const NoiseModel& noise() const { return noise_; }
    const CostFunction& cost() const { return cost_; }

    /// Shift fed to the theta curves at argument t, i.e. 2 M^{-1}(a/t).
    double shift_at(double t) const;

  private:
    NoiseModel noise_;
    CostFunction cost_;
    double budget_;
    std::optional<ThetaCurve> lb_curve_;
    std::optional<ThetaCurve> env_curve_;
};

/// Exact Gaussian curve (dimension-independent): t (1 - 2 Q(M^{-1}(a/t))).
/// Unit noise variance; `t` in [0,1], budget a > 0.
double ftv_gaussian(double budget, double t, const CostFunction& cost);

/// Applies each stage's upper bound in sequence starting from t0; returns the
/// per-stage trajectory.
std::vector<double> compose_curves(std::span<const DobrushinCurve> stages, double t0);

}  // namespace dcurve
