#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcurve/noise.hpp"

namespace dcurve {

/// A probability law on R in one of three shapes: a finite list of atoms, a
/// piecewise-linear density on a grid, or a Gaussian mixture. Atom masses /
/// mixture weights must be positive and sum to 1 within 1e-12; gridded
/// densities must integrate to 1 within 1e-9.
class Distribution {
  public:
    enum class Kind { discrete, gridded, gauss_mix };

    struct Component {
        double mean;
        double sd;
        double weight;
    };

    static Distribution discrete(std::vector<std::pair<double, double>> atoms);
    static Distribution point_mass(double x) { return discrete({{x, 1.0}}); }
    static Distribution gridded(std::vector<double> x, std::vector<double> f);
    static Distribution gauss_mix(std::vector<Component> components);
    static Distribution gaussian(double mean, double sd) {
        return gauss_mix({{mean, sd, 1.0}});
    }

    Kind kind() const { return kind_; }
    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
    const std::vector<double>& grid_x() const { return grid_x_; }
    const std::vector<double>& grid_f() const { return grid_f_; }
    const std::vector<Component>& components() const { return components_; }

    bool has_density() const { return kind_ != Kind::discrete; }
    double density(double x) const;  // gridded / gauss_mix only
    double cdf(double x) const;

    /// Interval outside of which the law carries mass at most `tail_eps`.
    std::pair<double, double> bulk_range(double tail_eps) const;

    nlohmann::json to_json() const;
    static Distribution from_json(const nlohmann::json& j);

  private:
    Distribution() = default;

    Kind kind_ = Kind::discrete;
    std::vector<std::pair<double, double>> atoms_;
    std::vector<double> grid_x_, grid_f_;
    std::vector<Component> components_;
};

/// Pushes P through the additive-noise channel: the law of X + Z. Discrete
/// inputs with Gaussian noise convolve exactly into Gaussian mixtures; other
/// combinations are evaluated onto a grid wide enough that the truncated
/// tail mass stays below 1e-8 (an error otherwise, never silent).
Distribution convolve(const Distribution& p, const NoiseModel& noise,
                      std::size_t grid_points = 1 << 18);

}  // namespace dcurve
