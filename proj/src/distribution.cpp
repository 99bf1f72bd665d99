#include "dcurve/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dcurve/math.hpp"
#include "dcurve/quadrature.hpp"

namespace dcurve {

Distribution Distribution::discrete(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("discrete distribution: no atoms");
    double mass = 0.0;
    std::set<double> locs;
    for (const auto& [x, w] : atoms) {
        if (!(w > 0.0)) throw std::invalid_argument("discrete distribution: masses must be > 0");
        if (!locs.insert(x).second) {
            throw std::invalid_argument("discrete distribution: atom locations must be distinct");
        }
        mass += w;
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw std::invalid_argument("discrete distribution: masses must sum to 1 within 1e-12");
    }
    std::sort(atoms.begin(), atoms.end());
    Distribution d;
    d.kind_ = Kind::discrete;
    d.atoms_ = std::move(atoms);
    return d;
}

Distribution Distribution::gridded(std::vector<double> x, std::vector<double> f) {
    // Reuse the noise-model validation (same representation).
    NoiseModel check = NoiseModel::gridded(x, f);
    Distribution d;
    d.kind_ = Kind::gridded;
    d.grid_x_ = check.grid_x();
    d.grid_f_ = check.grid_f();
    return d;
}

Distribution Distribution::gauss_mix(std::vector<Component> components) {
    if (components.empty()) throw std::invalid_argument("gauss_mix: no components");
    double mass = 0.0;
    for (const auto& c : components) {
        if (!(c.weight > 0.0)) throw std::invalid_argument("gauss_mix: weights must be > 0");
        if (!(c.sd > 0.0)) throw std::invalid_argument("gauss_mix: std-devs must be > 0");
        mass += c.weight;
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw std::invalid_argument("gauss_mix: weights must sum to 1 within 1e-12");
    }
    Distribution d;
    d.kind_ = Kind::gauss_mix;
    d.components_ = std::move(components);
    return d;
}

double Distribution::density(double x) const {
    switch (kind_) {
        case Kind::discrete:
            throw std::invalid_argument("density: discrete distribution has no density");
        case Kind::gridded: {
            if (x <= grid_x_.front() || x >= grid_x_.back()) {
                if (x == grid_x_.front()) return grid_f_.front();
                if (x == grid_x_.back()) return grid_f_.back();
                return 0.0;
            }
            const auto it = std::upper_bound(grid_x_.begin(), grid_x_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - grid_x_.begin()) - 1;
            const double w = (x - grid_x_[i]) / (grid_x_[i + 1] - grid_x_[i]);
            return grid_f_[i] + w * (grid_f_[i + 1] - grid_f_[i]);
        }
        case Kind::gauss_mix: {
            double acc = 0.0;
            for (const auto& c : components_) {
                acc += c.weight * gauss_pdf((x - c.mean) / c.sd) / c.sd;
            }
            return acc;
        }
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    switch (kind_) {
        case Kind::discrete: {
            double acc = 0.0;
            for (const auto& [loc, w] : atoms_) {
                if (loc <= x) acc += w;
            }
            return acc;
        }
        case Kind::gridded: {
            if (x <= grid_x_.front()) return 0.0;
            if (x >= grid_x_.back()) return 1.0;
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < grid_x_.size(); ++i) {
                if (grid_x_[i + 1] <= x) {
                    acc += 0.5 * (grid_f_[i] + grid_f_[i + 1]) * (grid_x_[i + 1] - grid_x_[i]);
                } else {
                    const double fx = density(x);
                    acc += 0.5 * (grid_f_[i] + fx) * (x - grid_x_[i]);
                    break;
                }
            }
            return std::min(1.0, acc);
        }
        case Kind::gauss_mix: {
            double acc = 0.0;
            for (const auto& c : components_) {
                acc += c.weight * gauss_cdf((x - c.mean) / c.sd);
            }
            return acc;
        }
    }
    return 0.0;
}

std::pair<double, double> Distribution::bulk_range(double tail_eps) const {
    switch (kind_) {
        case Kind::discrete:
            return {atoms_.front().first, atoms_.back().first};
        case Kind::gridded:
            return {grid_x_.front(), grid_x_.back()};
        case Kind::gauss_mix: {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            const double z = gauss_q_inv(std::min(0.25, tail_eps));
            for (const auto& c : components_) {
                lo = std::min(lo, c.mean - z * c.sd);
                hi = std::max(hi, c.mean + z * c.sd);
            }
            return {lo, hi};
        }
    }
    return {0.0, 0.0};
}

nlohmann::json Distribution::to_json() const {
    switch (kind_) {
        case Kind::discrete: {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& [x, w] : atoms_) a.push_back({x, w});
            return {{"kind", "discrete"}, {"atoms", a}};
        }
        case Kind::gridded:
            return {{"kind", "gridded"}, {"x", grid_x_}, {"f", grid_f_}};
        case Kind::gauss_mix: {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& c : components_) a.push_back({c.mean, c.sd, c.weight});
            return {{"kind", "gauss_mix"}, {"components", a}};
        }
    }
    return {};
}

Distribution Distribution::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
        std::vector<std::pair<double, double>> atoms;
        for (const auto& a : j.at("atoms")) {
            atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
        }
        return discrete(std::move(atoms));
    }
    if (kind == "gridded") {
        return gridded(j.at("x").get<std::vector<double>>(),
                       j.at("f").get<std::vector<double>>());
    }
    if (kind == "gauss_mix") {
        std::vector<Component> cs;
        for (const auto& c : j.at("components")) {
            cs.push_back({c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()});
        }
        return gauss_mix(std::move(cs));
    }
    throw std::invalid_argument("unknown distribution kind: " + kind);
}

namespace {

/// Grid for the law of X + Z: spans both supports with knot pairs inserted
/// at the density's jump points so the piecewise-linear representation does
/// not smear discontinuities.
std::vector<double> convolution_grid(const Distribution& p, const NoiseModel& noise,
                                     std::size_t grid_points) {
    const double tail = noise.tail_radius(1e-12);
    auto [plo, phi] = p.bulk_range(1e-12);
    double lo = plo - tail - 1.0;
    double hi = phi + tail + 1.0;
    if (noise.family() == NoiseModel::Family::exponential) lo = plo - 1.0;
    std::vector<double> xs = linspace(lo, hi, grid_points);

    // Knots at the convolved density's jumps and kinks (only discrete
    // inputs keep those after convolution).
    std::vector<double> jumps, kinks;
    if (p.kind() == Distribution::Kind::discrete) {
        for (const auto& [loc, w] : p.atoms()) {
            (void)w;
            switch (noise.family()) {
                case NoiseModel::Family::uniform:
                    jumps.push_back(loc - 0.5 * noise.param());
                    jumps.push_back(loc + 0.5 * noise.param());
                    break;
                case NoiseModel::Family::exponential:
                    jumps.push_back(loc);
                    break;
                case NoiseModel::Family::laplace:
                    kinks.push_back(loc);
                    break;
                default:
                    break;
            }
        }
    }
    for (double jp : jumps) {
        const double eps = 1e-12 * std::max(1.0, std::abs(jp));
        xs.push_back(jp - eps);
        xs.push_back(jp);
        xs.push_back(jp + eps);
    }
    xs.insert(xs.end(), kinks.begin(), kinks.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

Distribution convolve(const Distribution& p, const NoiseModel& noise, std::size_t grid_points) {
    // Exact path: atoms + Gaussian noise, or Gaussian mixture + Gaussian noise.
    if (noise.family() == NoiseModel::Family::gaussian) {
        const double s = noise.param();
        if (p.kind() == Distribution::Kind::discrete) {
            std::vector<Distribution::Component> cs;
            cs.reserve(p.atoms().size());
            for (const auto& [x, w] : p.atoms()) cs.push_back({x, s, w});
            return Distribution::gauss_mix(std::move(cs));
        }
        if (p.kind() == Distribution::Kind::gauss_mix) {
            std::vector<Distribution::Component> cs;
            cs.reserve(p.components().size());
            for (const auto& c : p.components()) {
                cs.push_back({c.mean, std::hypot(c.sd, s), c.weight});
            }
            return Distribution::gauss_mix(std::move(cs));
        }
    }

    const std::vector<double> xs = convolution_grid(p, noise, grid_points);
    std::vector<double> fs(xs.size(), 0.0);
    if (p.kind() == Distribution::Kind::discrete) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double acc = 0.0;
            for (const auto& [loc, w] : p.atoms()) acc += w * noise.density(xs[i] - loc);
            fs[i] = acc;
        }
    } else {
        // Quadrature over the input density: integral f_P(u) f_Z(y - u) du.
        // The input's own knots join the quadrature grid so piecewise-linear
        // inputs (jumps included) integrate exactly.
        auto [plo, phi] = p.bulk_range(1e-12);
        std::vector<double> us = linspace(plo, phi, 4096);
        if (p.kind() == Distribution::Kind::gridded) {
            for (double v : p.grid_x()) {
                if (v > plo && v < phi) us.push_back(v);
            }
            std::sort(us.begin(), us.end());
            us.erase(std::unique(us.begin(), us.end()), us.end());
        }
        const std::size_t m = us.size();
        std::vector<double> pu(m), tw(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) pu[k] = p.density(us[k]);
        for (std::size_t k = 0; k + 1 < m; ++k) {
            const double h = 0.5 * (us[k + 1] - us[k]);
            tw[k] += h;
            tw[k + 1] += h;
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                acc += tw[k] * pu[k] * noise.density(xs[i] - us[k]);
            }
            fs[i] = acc;
        }
    }

    const double mass = trapezoid(xs, fs);
    if (std::abs(mass - 1.0) > 1e-8) {
        throw std::runtime_error(
            "convolve: truncated tail mass exceeds 1e-8; widen the grid");
    }
    for (double& v : fs) v /= mass;  // renormalize the residual
    return Distribution::gridded(xs, fs);
}

}  // namespace dcurve
