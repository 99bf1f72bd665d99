#include "dcurve/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcurve/math.hpp"
#include "dcurve/quadrature.hpp"

namespace dcurve {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be strictly positive");
    }
}

double pl_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front() || x >= xs.back()) {
        if (x == xs.front()) return ys.front();
        if (x == xs.back()) return ys.back();
        return 0.0;
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + w * (ys[i + 1] - ys[i]);
}

}  // namespace

NoiseModel NoiseModel::gaussian(double sigma) {
    require_positive(sigma, "gaussian sigma");
    return NoiseModel(Family::gaussian, sigma);
}

NoiseModel NoiseModel::laplace(double scale) {
    require_positive(scale, "laplace scale");
    return NoiseModel(Family::laplace, scale);
}

NoiseModel NoiseModel::uniform(double width) {
    require_positive(width, "uniform width");
    return NoiseModel(Family::uniform, width);
}

NoiseModel NoiseModel::exponential(double rate) {
    require_positive(rate, "exponential rate");
    return NoiseModel(Family::exponential, rate);
}

NoiseModel NoiseModel::gridded(std::vector<double> x, std::vector<double> f) {
    if (x.size() != f.size() || x.size() < 2) {
        throw std::invalid_argument("gridded noise: need matching x/f with >= 2 points");
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) {
            throw std::invalid_argument("gridded noise: grid must be strictly increasing");
        }
    }
    for (double v : f) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw std::invalid_argument("gridded noise: density values must be >= 0");
        }
    }
    const double mass = trapezoid(x, f);
    if (std::abs(mass - 1.0) > 1e-9) {
        throw std::invalid_argument("gridded noise: density must integrate to 1 within 1e-9");
    }
    NoiseModel m(Family::gridded, 0.0);
    m.grid_x_ = std::move(x);
    m.grid_f_ = std::move(f);
    return m;
}

double NoiseModel::density(double z) const {
    switch (family_) {
        case Family::gaussian:
            return gauss_pdf(z / param_) / param_;
        case Family::laplace:
            return 0.5 / param_ * std::exp(-std::abs(z) / param_);
        case Family::uniform:
            return (std::abs(z) <= 0.5 * param_) ? 1.0 / param_ : 0.0;
        case Family::exponential:
            return (z >= 0.0) ? param_ * std::exp(-param_ * z) : 0.0;
        case Family::gridded:
            return pl_interp(grid_x_, grid_f_, z);
    }
    return 0.0;
}

double NoiseModel::cdf(double z) const {
    switch (family_) {
        case Family::gaussian:
            return gauss_cdf(z / param_);
        case Family::laplace:
            return (z < 0.0) ? 0.5 * std::exp(z / param_)
                             : 1.0 - 0.5 * std::exp(-z / param_);
        case Family::uniform: {
            const double h = 0.5 * param_;
            if (z <= -h) return 0.0;
            if (z >= h) return 1.0;
            return (z + h) / param_;
        }
        case Family::exponential:
            return (z >= 0.0) ? -std::expm1(-param_ * z) : 0.0;
        case Family::gridded: {
            if (z <= grid_x_.front()) return 0.0;
            if (z >= grid_x_.back()) return 1.0;
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < grid_x_.size(); ++i) {
                if (grid_x_[i + 1] <= z) {
                    acc += 0.5 * (grid_f_[i] + grid_f_[i + 1]) * (grid_x_[i + 1] - grid_x_[i]);
                } else {
                    const double fz = pl_interp(grid_x_, grid_f_, z);
                    acc += 0.5 * (grid_f_[i] + fz) * (z - grid_x_[i]);
                    break;
                }
            }
            return std::min(1.0, acc);
        }
    }
    return 0.0;
}

double NoiseModel::tail_radius(double tail_eps) const {
    switch (family_) {
        case Family::gaussian:
            return param_ * gauss_q_inv(0.5 * tail_eps);
        case Family::laplace:
            return param_ * std::log(1.0 / tail_eps);
        case Family::uniform:
            return 0.5 * param_;
        case Family::exponential:
            return std::log(1.0 / tail_eps) / param_;
        case Family::gridded:
            return std::max(std::abs(grid_x_.front()), std::abs(grid_x_.back()));
    }
    return 0.0;
}

nlohmann::json NoiseModel::to_json() const {
    switch (family_) {
        case Family::gaussian:
            return {{"family", "gaussian"}, {"params", {{"sigma", param_}}}};
        case Family::laplace:
            return {{"family", "laplace"}, {"params", {{"scale", param_}}}};
        case Family::uniform:
            return {{"family", "uniform"}, {"params", {{"width", param_}}}};
        case Family::exponential:
            return {{"family", "exponential"}, {"params", {{"rate", param_}}}};
        case Family::gridded:
            return {{"family", "gridded"}, {"x", grid_x_}, {"f", grid_f_}};
    }
    return {};
}

NoiseModel NoiseModel::from_json(const nlohmann::json& j) {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "gaussian") return gaussian(j.at("params").at("sigma").get<double>());
    if (fam == "laplace") return laplace(j.at("params").at("scale").get<double>());
    if (fam == "uniform") return uniform(j.at("params").at("width").get<double>());
    if (fam == "exponential") return exponential(j.at("params").at("rate").get<double>());
    if (fam == "gridded") {
        return gridded(j.at("x").get<std::vector<double>>(),
                       j.at("f").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown noise family: " + fam);
}

namespace {

/// (1/2) integral |f(z - x) - f(z)| dz for a piecewise-linear density,
/// evaluated exactly on the merged grid. A single increasing sweep tracks
/// both interpolation segments, so the cost is O(n) per call.
double theta_gridded(const std::vector<double>& xs, const std::vector<double>& fs, double x) {
    const std::size_t n = xs.size();
    std::size_t ia = 0;   // next union candidate from xs
    std::size_t ib = 0;   // next union candidate from xs + x
    std::size_t sa = 0;   // current segment of f at u
    std::size_t sb = 0;   // current segment of f at u - x
    auto seg_eval = [&](std::size_t& seg, double z) {
        if (z <= xs.front() || z >= xs.back()) {
            if (z == xs.front()) return fs.front();
            if (z == xs.back()) return fs.back();
            return 0.0;
        }
        while (seg + 2 < n && xs[seg + 1] <= z) ++seg;
        const double w = (z - xs[seg]) / (xs[seg + 1] - xs[seg]);
        return fs[seg] + w * (fs[seg + 1] - fs[seg]);
    };
    double prev_u = 0.0;
    double prev_d = 0.0;
    bool have_prev = false;
    double acc = 0.0;
    while (ia < n || ib < n) {
        double u;
        if (ib >= n || (ia < n && xs[ia] <= xs[ib] + x)) {
            u = xs[ia++];
        } else {
            u = xs[ib++] + x;
        }
        if (have_prev && u == prev_u) continue;
        const double d = seg_eval(sa, u) - seg_eval(sb, u - x);
        if (have_prev) {
            const double h = u - prev_u;
            if (prev_d * d >= 0.0) {
                acc += 0.5 * (std::abs(prev_d) + std::abs(d)) * h;
            } else {
                const double c = prev_d / (prev_d - d);
                acc += 0.5 * (std::abs(prev_d) * c + std::abs(d) * (1.0 - c)) * h;
            }
        }
        prev_u = u;
        prev_d = d;
        have_prev = true;
    }
    return std::min(1.0, 0.5 * acc);
}

}  // namespace

double theta(const NoiseModel& model, double x) {
    if (x < 0.0 || !std::isfinite(x)) {
        if (std::isinf(x) && x > 0.0) return 1.0;
        throw std::domain_error("theta: shift must be >= 0");
    }
    if (x == 0.0) return 0.0;
    switch (model.family()) {
        case NoiseModel::Family::gaussian:
            return 1.0 - 2.0 * gauss_q(0.5 * x / model.param());
        case NoiseModel::Family::laplace:
            return -std::expm1(-0.5 * x / model.param());
        case NoiseModel::Family::uniform:
            return std::min(x / model.param(), 1.0);
        case NoiseModel::Family::exponential:
            return -std::expm1(-model.param() * x);
        case NoiseModel::Family::gridded:
            return theta_gridded(model.grid_x(), model.grid_f(), x);
    }
    return 0.0;
}

double theta_tail(const NoiseModel& model, double x) {
    if (x < 0.0 || !std::isfinite(x)) {
        if (std::isinf(x) && x > 0.0) return 0.0;
        throw std::domain_error("theta_tail: shift must be >= 0");
    }
    switch (model.family()) {
        case NoiseModel::Family::gaussian:
            return 2.0 * gauss_q(0.5 * x / model.param());
        case NoiseModel::Family::laplace:
            return std::exp(-0.5 * x / model.param());
        case NoiseModel::Family::uniform:
            return std::max(0.0, 1.0 - x / model.param());
        case NoiseModel::Family::exponential:
            return std::exp(-model.param() * x);
        case NoiseModel::Family::gridded:
            return 1.0 - theta(model, x);
    }
    return 0.0;
}

double theta_lb(const NoiseModel& model, double s) {
    if (s < 0.0) throw std::domain_error("theta_lb: radius must be >= 0");
    if (s == 0.0) return 0.0;
    if (model.family() != NoiseModel::Family::gridded) {
        return theta(model, s);  // theta is monotone for the named families
    }
    // Grid maximum of theta over [0, s].
    const double width = model.grid_x().back() - model.grid_x().front();
    const double hi = std::min(s, width);
    const std::size_t n = 512;
    double best = theta(model, hi);
    for (std::size_t i = 1; i < n; ++i) {
        best = std::max(best, theta(model, hi * static_cast<double>(i) / static_cast<double>(n)));
    }
    if (s > width) best = std::max(best, theta(model, std::min(s, 2.0 * width)));
    return best;
}

double ThetaCurve::eval(double s) const {
    if (x.empty()) throw std::invalid_argument("ThetaCurve: empty grid");
    if (s < 0.0) throw std::domain_error("ThetaCurve: shift must be >= 0");
    if (s >= x.back()) return y.back();  // clamp; widen the grid for larger shifts
    if (s <= x.front()) return y.front();
    const auto it = std::upper_bound(x.begin(), x.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (s - x[i]) / (x[i + 1] - x[i]);
    return y[i] + w * (y[i + 1] - y[i]);
}

double ThetaCurve::concavity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double sl = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        const double sr = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        worst = std::max(worst, sr - sl);
    }
    return worst;
}

ThetaCurve ThetaCurve::sample_raw(const NoiseModel& model, double x_max, std::size_t n) {
    ThetaCurve c;
    c.kind = Kind::raw;
    c.x = linspace(0.0, x_max, n);
    c.y.reserve(n);
    for (double xi : c.x) c.y.push_back(theta(model, xi));
    return c;
}

ThetaCurve ThetaCurve::sample_lb(const NoiseModel& model, double x_max, std::size_t n) {
    ThetaCurve c = sample_raw(model, x_max, n);
    c.kind = Kind::sup_ball;
    double run = 0.0;
    for (double& v : c.y) {
        run = std::max(run, v);
        v = run;
    }
    return c;
}

ThetaCurve concave_envelope(const ThetaCurve& curve) {
    if (curve.x.empty()) throw std::invalid_argument("concave_envelope: empty grid");
    // Upper hull of {(0,0)} u {(x_i, y_i)} by a monotone-chain sweep.
    std::vector<double> hx{0.0}, hy{0.0};
    auto cross = [](double x0, double y0, double x1, double y1, double x2, double y2) {
        return (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    };
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        const double px = curve.x[i];
        const double py = curve.y[i];
        if (px <= 0.0) continue;  // the origin anchor covers x = 0
        while (hx.size() >= 2 &&
               cross(hx[hx.size() - 2], hy[hy.size() - 2], hx.back(), hy.back(), px, py) >= 0.0) {
            hx.pop_back();
            hy.pop_back();
        }
        hx.push_back(px);
        hy.push_back(py);
    }
    ThetaCurve env;
    env.kind = ThetaCurve::Kind::envelope;
    // Re-sample the hull onto the input grid so that callers can compare
    // curves pointwise; append the flat extension value at the end.
    env.x = curve.x;
    env.y.resize(curve.x.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        const double xv = curve.x[i];
        while (seg + 1 < hx.size() && hx[seg + 1] < xv) ++seg;
        if (seg + 1 >= hx.size()) {
            env.y[i] = std::min(1.0, hy.back());
        } else {
            const double w = (xv - hx[seg]) / (hx[seg + 1] - hx[seg]);
            env.y[i] = hy[seg] + w * (hy[seg + 1] - hy[seg]);
        }
    }
    if (!env.y.empty()) env.y.back() = std::min(1.0, env.y.back());
    return env;
}

ContractionReport contraction_criterion(const NoiseModel& model, double A, double tol) {
    if (!(A > 0.0)) throw std::domain_error("contraction_criterion: radius must be > 0");
    ContractionReport r;
    r.eta = theta_lb(model, A);
    r.saturated = (r.eta >= 1.0 - tol);
    return r;
}

}  // namespace dcurve
