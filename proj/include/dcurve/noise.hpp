#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dcurve {

/// An additive-noise law on the real line. Named families carry their scale
/// parameter; "gridded" holds a piecewise-linear density on a strictly
/// increasing grid (normalized to unit mass within 1e-9 by the trapezoid
/// rule).
class NoiseModel {
  public:
    enum class Family { gaussian, laplace, uniform, exponential, gridded };

    static NoiseModel gaussian(double sigma);
    static NoiseModel laplace(double scale);
    static NoiseModel uniform(double width);      // centered on 0
    static NoiseModel exponential(double rate);   // one-sided on R+
    static NoiseModel gridded(std::vector<double> x, std::vector<double> f);

    Family family() const { return family_; }
    double param() const { return param_; }
    const std::vector<double>& grid_x() const { return grid_x_; }
    const std::vector<double>& grid_f() const { return grid_f_; }

    double density(double z) const;
    double cdf(double z) const;

    /// True for the families whose theta is concave on R+ (one-sided
    /// monotone or symmetric unimodal density).
    bool theta_concave() const { return family_ != Family::gridded; }

    /// True when the density is symmetric and non-increasing on R+.
    bool symmetric_unimodal() const {
        return family_ == Family::gaussian || family_ == Family::laplace ||
               family_ == Family::uniform;
    }

    /// Half-width of an interval around the bulk of the law outside of which
    /// the tail mass is below `tail_eps`.
    double tail_radius(double tail_eps) const;

    nlohmann::json to_json() const;
    static NoiseModel from_json(const nlohmann::json& j);

  private:
    NoiseModel(Family f, double p) : family_(f), param_(p) {}

    Family family_;
    double param_ = 0.0;
    std::vector<double> grid_x_, grid_f_;
};

/// theta(x) = TV(P_Z, P_{Z+x}) for shift x >= 0. Closed forms for the named
/// families; exact piecewise-linear quadrature on the union grid for gridded
/// models.
double theta(const NoiseModel& model, double x);

/// theta_lb(s) = sup_{|x| <= s} theta(x). Equals theta(s) for the named
/// families (monotone theta); grid maximum for gridded models.
double theta_lb(const NoiseModel& model, double s);

/// 1 - theta(x), computed without cancellation so the deep tail keeps full
/// relative precision (e.g. 2 Q(x/2) for the Gaussian instead of
/// 1 - (1 - 2Q)).
double theta_tail(const NoiseModel& model, double x);

/// A sampled theta-type curve on [0, x_max].
struct ThetaCurve {
    enum class Kind { raw, sup_ball, envelope };

    std::vector<double> x;
    std::vector<double> y;
    Kind kind = Kind::raw;

    /// Piecewise-linear evaluation; clamped to the last value beyond x_max
    /// (callers needing larger shifts must widen the grid).
    double eval(double s) const;

    /// Largest discrete second difference; <= tol means concave on the grid.
    double concavity_defect() const;

    static ThetaCurve sample_raw(const NoiseModel& model, double x_max, std::size_t n);
    static ThetaCurve sample_lb(const NoiseModel& model, double x_max, std::size_t n);
};

/// Smallest concave majorant of a theta_lb curve (upper hull through (0,0)),
/// extended past x_max by the constant min(1, last hull value).
ThetaCurve concave_envelope(const ThetaCurve& curve);

struct ContractionReport {
    double eta = 0.0;
    bool saturated = false;
};

/// eta(A) = sup_{|x| <= A} theta(x); saturated when eta >= 1 - tol, which
/// signals that total variation does not strictly contract (for gridded
/// models the call decides at grid resolution only).
ContractionReport contraction_criterion(const NoiseModel& model, double A, double tol = 1e-12);

}  // namespace dcurve
