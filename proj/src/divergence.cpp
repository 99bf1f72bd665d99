#include "dcurve/divergence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dcurve/math.hpp"
#include "dcurve/quadrature.hpp"

namespace dcurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Union atom table for a discrete pair: (location, p-mass, q-mass).
std::vector<std::array<double, 3>> union_atoms(const Distribution& p, const Distribution& q) {
    std::map<double, std::array<double, 2>> table;
    for (const auto& [x, w] : p.atoms()) table[x][0] += w;
    for (const auto& [x, w] : q.atoms()) table[x][1] += w;
    std::vector<std::array<double, 3>> out;
    out.reserve(table.size());
    for (const auto& [x, pq] : table) out.push_back({x, pq[0], pq[1]});
    return out;
}

/// Both densities evaluated on a shared grid. Gridded inputs keep their own
/// knots (jumps included); smooth mixtures are sampled uniformly.
struct RenderedPair {
    std::vector<double> x, p, q;
};

RenderedPair render_pair(const Distribution& p, const Distribution& q,
                         std::size_t base_points = 120001) {
    auto [plo, phi] = p.bulk_range(1e-12);
    auto [qlo, qhi] = q.bulk_range(1e-12);
    const double lo = std::min(plo, qlo);
    const double hi = std::max(phi, qhi);
    std::vector<double> xs = linspace(lo, hi, base_points);
    auto add_knots = [&xs, lo, hi](const Distribution& d) {
        if (d.kind() == Distribution::Kind::gridded) {
            for (double v : d.grid_x()) {
                if (v > lo && v < hi) xs.push_back(v);
            }
        }
    };
    add_knots(p);
    add_knots(q);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    RenderedPair r;
    r.p.resize(xs.size());
    r.q.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        r.p[i] = p.density(xs[i]);
        r.q[i] = q.density(xs[i]);
    }
    r.x = std::move(xs);
    return r;
}

void require_comparable(const Distribution& p, const Distribution& q) {
    const bool pd = p.kind() == Distribution::Kind::discrete;
    const bool qd = q.kind() == Distribution::Kind::discrete;
    if (pd != qd) {
        throw std::invalid_argument(
            "discrete laws cannot be compared with densities directly; convolve first");
    }
}

bool both_smooth(const Distribution& p, const Distribution& q) {
    return p.kind() == Distribution::Kind::gauss_mix &&
           q.kind() == Distribution::Kind::gauss_mix;
}

/// Gauss-Legendre quadrature of `f` over the joint bulk of two mixtures.
template <typename F>
double smooth_quad(const Distribution& p, const Distribution& q, const F& f) {
    auto [plo, phi] = p.bulk_range(1e-14);
    auto [qlo, qhi] = q.bulk_range(1e-14);
    const double lo = std::min(plo, qlo) - 2.0;
    const double hi = std::max(phi, qhi) + 2.0;
    double min_sd = kInf;
    for (const auto& c : p.components()) min_sd = std::min(min_sd, c.sd);
    for (const auto& c : q.components()) min_sd = std::min(min_sd, c.sd);
    const auto panels =
        static_cast<std::size_t>(std::ceil((hi - lo) / (0.25 * std::min(1.0, min_sd))));
    return gl15_panels(f, lo, hi, panels);
}

}  // namespace

double tv(const Distribution& p, const Distribution& q) {
    require_comparable(p, q);
    if (p.kind() == Distribution::Kind::discrete) {
        double acc = 0.0;
        for (const auto& [x, pw, qw] : union_atoms(p, q)) {
            (void)x;
            acc += std::abs(pw - qw);
        }
        return std::min(1.0, 0.5 * acc);
    }
    const RenderedPair r = render_pair(p, q);
    std::vector<double> diff(r.x.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.p[i] - r.q[i];
    return std::min(1.0, 0.5 * integrate_abs_pl(r.x, diff));
}

double e_gamma(const Distribution& p, const Distribution& q, double gamma) {
    if (gamma < 0.0) throw std::domain_error("e_gamma: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    require_comparable(p, q);
    if (p.kind() == Distribution::Kind::discrete) {
        double acc = 0.0;
        for (const auto& [x, pw, qw] : union_atoms(p, q)) {
            (void)x;
            acc += std::abs(pw - gamma * qw);
        }
        return std::max(0.0, 0.5 * acc - 0.5 * std::abs(1.0 - gamma));
    }
    // For gamma <= 1: integral (gamma q - p)^+ ; for gamma >= 1: (p - gamma q)^+.
    const RenderedPair r = render_pair(p, q);
    std::vector<double> diff(r.x.size());
    if (gamma <= 1.0) {
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = gamma * r.q[i] - r.p[i];
    } else {
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = r.p[i] - gamma * r.q[i];
    }
    return std::max(0.0, integrate_pos_pl(r.x, diff));
}

double e_gamma_derivative_check(const Distribution& p, const Distribution& q, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("e_gamma derivative: gamma must be > 0");
    if (gamma == 1.0) {
        throw std::domain_error("e_gamma derivative: gamma = 1 is the kink of E_gamma");
    }
    require_comparable(p, q);
    double q_above = 0.0;  // Q[dP/dQ > gamma], strict inequality
    if (p.kind() == Distribution::Kind::discrete) {
        for (const auto& [x, pw, qw] : union_atoms(p, q)) {
            (void)x;
            if (qw > 0.0 && pw > gamma * qw) q_above += qw;
        }
    } else {
        const RenderedPair r = render_pair(p, q);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < r.x.size(); ++i) {
            const double d0 = r.p[i] - gamma * r.q[i];
            const double d1 = r.p[i + 1] - gamma * r.q[i + 1];
            const double h = r.x[i + 1] - r.x[i];
            if (d0 > 0.0 && d1 > 0.0) {
                acc += 0.5 * (r.q[i] + r.q[i + 1]) * h;
            } else if (d0 > 0.0 || d1 > 0.0) {
                const double c = d0 / (d0 - d1);  // crossing offset
                const double qc = r.q[i] + c * (r.q[i + 1] - r.q[i]);
                if (d0 > 0.0) {
                    acc += 0.5 * (r.q[i] + qc) * c * h;
                } else {
                    acc += 0.5 * (qc + r.q[i + 1]) * (1.0 - c) * h;
                }
            }
        }
        q_above = acc;
    }
    return (gamma < 1.0 ? 1.0 : 0.0) - q_above;
}

DivergenceKind DivergenceKind::renyi(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("renyi: alpha must be > 0");
    return {Type::renyi, alpha};
}

double DivergenceKind::fpp(double x) const {
    switch (type) {
        case Type::kl: return 1.0 / x;
        case Type::chi2: return 2.0;
        case Type::hellinger2: return 0.5 * std::pow(x, -1.5);
        case Type::renyi:
            if (alpha == 1.0) return 1.0 / x;
            return std::abs(alpha * (alpha - 1.0)) * std::pow(x, alpha - 2.0);
    }
    return 0.0;
}

namespace {

/// Generator integrand value q f(p/q) with the conventions of each family;
/// returns +inf where absolute continuity fails for the inf-prone kinds.
double cell_div(double pw, double qw, const DivergenceKind& kind) {
    const bool inf_prone = kind.type == DivergenceKind::Type::kl ||
                           kind.type == DivergenceKind::Type::chi2 ||
                           (kind.type == DivergenceKind::Type::renyi && kind.alpha >= 1.0);
    if (qw <= 0.0) {
        if (pw <= 0.0) return 0.0;
        if (inf_prone) return kInf;
        switch (kind.type) {
            case DivergenceKind::Type::hellinger2: return pw;
            case DivergenceKind::Type::renyi: return 0.0;  // alpha < 1
            default: return kInf;
        }
    }
    switch (kind.type) {
        case DivergenceKind::Type::kl:
            return pw > 0.0 ? pw * std::log(pw / qw) : 0.0;
        case DivergenceKind::Type::chi2:
            return pw * pw / qw;
        case DivergenceKind::Type::hellinger2: {
            const double d = std::sqrt(pw) - std::sqrt(qw);
            return d * d;
        }
        case DivergenceKind::Type::renyi:
            if (kind.alpha == 1.0) return pw > 0.0 ? pw * std::log(pw / qw) : 0.0;
            return std::pow(pw, kind.alpha) * std::pow(qw, 1.0 - kind.alpha);
    }
    return 0.0;
}

/// Combines the integrated/summed generator value into the divergence.
double finish_div(double raw, const DivergenceKind& kind) {
    switch (kind.type) {
        case DivergenceKind::Type::kl: return std::max(0.0, raw);
        case DivergenceKind::Type::chi2: return std::max(0.0, raw - 1.0);
        case DivergenceKind::Type::hellinger2: return std::max(0.0, raw);
        case DivergenceKind::Type::renyi:
            if (kind.alpha == 1.0) return std::max(0.0, raw);
            if (kind.alpha > 1.0) return std::max(0.0, raw - 1.0);
            return std::max(0.0, 1.0 - raw);
    }
    return 0.0;
}

}  // namespace

double f_divergence(const Distribution& p, const Distribution& q, const DivergenceKind& kind) {
    require_comparable(p, q);
    if (p.kind() == Distribution::Kind::discrete) {
        double acc = 0.0;
        for (const auto& [x, pw, qw] : union_atoms(p, q)) {
            (void)x;
            const double c = cell_div(pw, qw, kind);
            if (std::isinf(c)) return kInf;
            acc += c;
        }
        return finish_div(acc, kind);
    }
    if (both_smooth(p, q)) {
        const double raw = smooth_quad(p, q, [&](double x) {
            return cell_div(p.density(x), std::max(q.density(x), 1e-300), kind);
        });
        return finish_div(raw, kind);
    }
    const RenderedPair r = render_pair(p, q);
    std::vector<double> integrand(r.x.size());
    for (std::size_t i = 0; i < integrand.size(); ++i) {
        const double c = cell_div(r.p[i], std::max(r.q[i], 1e-300), kind);
        integrand[i] = c;
    }
    return finish_div(trapezoid(r.x, integrand), kind);
}

double integral_representation(const Distribution& p, const Distribution& q,
                               const DivergenceKind& kind) {
    require_comparable(p, q);

    // E_gamma as a cheap function of gamma (pair rendered once).
    std::vector<std::array<double, 3>> atoms;
    RenderedPair r;
    const bool discrete = p.kind() == Distribution::Kind::discrete;
    if (discrete) {
        atoms = union_atoms(p, q);
    } else {
        r = render_pair(p, q, 60001);
    }
    auto e_of_gamma = [&](double g) -> double {
        if (discrete) {
            double acc = 0.0;
            for (const auto& [x, pw, qw] : atoms) {
                (void)x;
                acc += std::abs(pw - g * qw);
            }
            return std::max(0.0, 0.5 * acc - 0.5 * std::abs(1.0 - g));
        }
        double acc = 0.0;
        const auto& xs = r.x;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double d0 = (g <= 1.0) ? g * r.q[i] - r.p[i] : r.p[i] - g * r.q[i];
            const double d1 =
                (g <= 1.0) ? g * r.q[i + 1] - r.p[i + 1] : r.p[i + 1] - g * r.q[i + 1];
            const double h = xs[i + 1] - xs[i];
            if (d0 >= 0.0 && d1 >= 0.0) {
                acc += 0.5 * (d0 + d1) * h;
            } else if (d0 > 0.0 || d1 > 0.0) {
                const double c = d0 / (d0 - d1);
                if (d0 > 0.0) acc += 0.5 * d0 * c * h;
                else acc += 0.5 * d1 * (1.0 - c) * h;
            }
        }
        return std::max(0.0, acc);
    };

    // A persistent E_gamma at the top of the gamma range means the
    // generator-weighted integral diverges for the inf-prone kinds.
    const bool inf_prone = kind.type == DivergenceKind::Type::kl ||
                           kind.type == DivergenceKind::Type::chi2 ||
                           (kind.type == DivergenceKind::Type::renyi && kind.alpha >= 1.0);
    if (inf_prone && e_of_gamma(1e6) > 1e-12) {
        return std::numeric_limits<double>::infinity();
    }

    // Panels in u = ln(gamma) over [1e-6, 1e6], split at the kink u = 0,
    // narrower near it; truncated once E_gamma falls below 1e-14.
    const double ulo = std::log(1e-6);
    const double uhi = std::log(1e6);
    double total = 0.0;
    double u = ulo;
    bool seen_mass = false;
    while (u < uhi) {
        double width = 0.35 * std::min(1.0, std::max(0.05, std::abs(u) / 2.0));
        double next = std::min(u + width, uhi);
        if (u < 0.0 && next > 0.0) next = 0.0;
        const double e_edge = std::max(e_of_gamma(std::exp(u)), e_of_gamma(std::exp(next)));
        if (e_edge < 1e-14) {
            if (seen_mass && u > 0.0) break;  // decreasing tail, done
            u = next;
            continue;
        }
        seen_mass = true;
        total += gl15(
            [&](double uu) {
                const double g = std::exp(uu);
                return e_of_gamma(g) * kind.fpp(g) * g;
            },
            u, next);
        u = next;
    }
    return total;
}

ChannelMatrix::ChannelMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    if (rows_.empty() || rows_.front().empty()) {
        throw std::invalid_argument("channel matrix: empty");
    }
    const std::size_t m = rows_.front().size();
    for (const auto& row : rows_) {
        if (row.size() != m) throw std::invalid_argument("channel matrix: ragged rows");
        double s = 0.0;
        for (double v : row) {
            if (v < 0.0) throw std::invalid_argument("channel matrix: negative entry");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-12) {
            throw std::invalid_argument("channel matrix: rows must sum to 1 within 1e-12");
        }
    }
}

ChannelMatrix ChannelMatrix::compose(const ChannelMatrix& then) const {
    if (outputs() != then.inputs()) {
        throw std::invalid_argument("channel compose: dimension mismatch");
    }
    std::vector<std::vector<double>> out(inputs(), std::vector<double>(then.outputs(), 0.0));
    for (std::size_t i = 0; i < inputs(); ++i) {
        for (std::size_t k = 0; k < outputs(); ++k) {
            const double w = rows_[i][k];
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < then.outputs(); ++j) {
                out[i][j] += w * then.row(k)[j];
            }
        }
    }
    return ChannelMatrix(std::move(out));
}

double dobrushin_coefficient(const ChannelMatrix& ch) {
    double best = 0.0;
    for (std::size_t i = 0; i < ch.inputs(); ++i) {
        for (std::size_t j = i + 1; j < ch.inputs(); ++j) {
            double acc = 0.0;
            for (std::size_t y = 0; y < ch.outputs(); ++y) {
                acc += std::abs(ch.row(i)[y] - ch.row(j)[y]);
            }
            best = std::max(best, 0.5 * acc);
        }
    }
    return best;
}

namespace {

/// Symmetric Jacobi eigenvalues (descending); sufficient for the small
/// Gram matrices built here.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        }
        if (off < 1e-30) break;
        for (std::size_t pI = 0; pI < n; ++pI) {
            for (std::size_t qI = pI + 1; qI < n; ++qI) {
                if (std::abs(a[pI][qI]) < 1e-300) continue;
                const double theta = 0.5 * (a[qI][qI] - a[pI][pI]) / a[pI][qI];
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][pI];
                    const double akq = a[k][qI];
                    a[k][pI] = c * akp - s * akq;
                    a[k][qI] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[pI][k];
                    const double aqk = a[qI][k];
                    a[pI][k] = c * apk - s * aqk;
                    a[qI][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.rbegin(), eig.rend());
    return eig;
}

}  // namespace

double eta_chi2_discrete(std::span<const double> input, const ChannelMatrix& ch) {
    if (input.size() != ch.inputs()) {
        throw std::invalid_argument("eta_chi2: input mass count must match channel rows");
    }
    double mass = 0.0;
    for (double w : input) {
        if (!(w > 0.0)) throw std::invalid_argument("eta_chi2: input masses must be positive");
        mass += w;
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw std::invalid_argument("eta_chi2: input masses must sum to 1");
    }
    const std::size_t nx = ch.inputs();
    const std::size_t ny = ch.outputs();
    std::vector<double> py(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) py[y] += input[x] * ch.row(x)[y];
    }
    std::vector<std::size_t> keep;
    for (std::size_t y = 0; y < ny; ++y) {
        if (py[y] > 0.0) keep.push_back(y);  // zero-mass output symbols dropped
    }
    // B[x,y] = P_XY / sqrt(P_X P_Y); eigenvalues of B^T B are the squared
    // singular values, led by 1.
    std::vector<std::vector<double>> bt_b(keep.size(), std::vector<double>(keep.size(), 0.0));
    for (std::size_t yi = 0; yi < keep.size(); ++yi) {
        for (std::size_t yj = yi; yj < keep.size(); ++yj) {
            double acc = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                const double bi =
                    input[x] * ch.row(x)[keep[yi]] / std::sqrt(input[x] * py[keep[yi]]);
                const double bj =
                    input[x] * ch.row(x)[keep[yj]] / std::sqrt(input[x] * py[keep[yj]]);
                acc += bi * bj;
            }
            bt_b[yi][yj] = acc;
            bt_b[yj][yi] = acc;
        }
    }
    const std::vector<double> eig = jacobi_eigenvalues(std::move(bt_b));
    if (eig.size() < 2) return 0.0;
    return std::max(0.0, std::min(1.0, eig[1]));
}

double renyi_contraction_bound(double alpha, double a, double t, double eps) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("renyi_contraction_bound: alpha must lie in (0,1)");
    }
    if (!(a > 0.0)) throw std::domain_error("renyi_contraction_bound: a must be > 0");
    if (!(t > 0.0 && t < 1.0)) {
        throw std::domain_error("renyi_contraction_bound: t must lie in (0,1)");
    }
    if (!(eps > 0.0)) throw std::domain_error("renyi_contraction_bound: eps must be > 0");
    const double arg = std::sqrt(a) * std::pow(t, -(1.0 + eps) / (2.0 * alpha));
    return t * (1.0 - 2.0 * gauss_q(arg)) +
           (1.0 + alpha - alpha * alpha) * std::pow(t, 1.0 + eps);
}

std::pair<Distribution, Distribution> noncontraction_witness(double alpha, double t, double a,
                                                             double q) {
    if (!(alpha >= 1.0)) throw std::domain_error("witness: alpha must be >= 1");
    if (!(t > 0.0)) throw std::domain_error("witness: t must be > 0");
    if (!(a > 0.0)) throw std::domain_error("witness: a must be > 0");
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("witness: q must lie in (0,1)");
    if (alpha == 1.0 && !(t < a / 8.0)) {
        throw std::domain_error("witness: alpha = 1 requires t < a/8");
    }
    const double p = (alpha == 1.0) ? t / std::log(1.0 / q) : q * std::pow(t / q, 1.0 / alpha);
    if (!(p > 0.0 && p < 0.5)) {
        throw std::domain_error("witness: q is too large for these parameters (p outside (0,1/2))");
    }
    if (q > p) {
        throw std::domain_error("witness: need q <= p so that the pair lies in G_a");
    }
    const double b = std::sqrt(a / p);
    return {Distribution::discrete({{0.0, 1.0 - p}, {b, p}}),
            Distribution::discrete({{0.0, 1.0 - q}, {b, q}})};
}

double tv_w1_bound(const NoiseModel& noise, double w1) {
    if (w1 < 0.0) throw std::domain_error("tv_w1_bound: w1 must be >= 0");
    if (!noise.symmetric_unimodal()) {
        throw std::domain_error(
            "tv_w1_bound: noise must have a symmetric density non-increasing on R+");
    }
    return noise.cdf(0.5 * w1) - noise.cdf(-0.5 * w1);
}

double w1_distance(const Distribution& p, const Distribution& q) {
    if (p.kind() == Distribution::Kind::discrete &&
        q.kind() == Distribution::Kind::discrete) {
        const auto table = union_atoms(p, q);
        double acc = 0.0;
        double fp = 0.0, fq = 0.0;
        for (std::size_t i = 0; i + 1 < table.size(); ++i) {
            fp += table[i][1];
            fq += table[i][2];
            acc += std::abs(fp - fq) * (table[i + 1][0] - table[i][0]);
        }
        return acc;
    }
    auto [plo, phi] = p.bulk_range(1e-12);
    auto [qlo, qhi] = q.bulk_range(1e-12);
    const double lo = std::min(plo, qlo) - 1.0;
    const double hi = std::max(phi, qhi) + 1.0;
    if (!(std::isfinite(lo) && std::isfinite(hi))) {
        throw std::runtime_error("w1_distance: unbounded bulk range");
    }
    const std::size_t n = 200001;
    const std::vector<double> xs = linspace(lo, hi, n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = p.cdf(xs[i]) - q.cdf(xs[i]);
    return integrate_abs_pl(xs, d);
}

}  // namespace dcurve
