#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dcurve/distribution.hpp"
#include "dcurve/noise.hpp"

namespace dcurve {

/// Total variation distance. Exact for discrete/discrete; density pairs are
/// compared on a shared grid. A discrete law cannot meet a density directly
/// (convolve it first), that call is rejected.
double tv(const Distribution& p, const Distribution& q);

/// E_gamma(P||Q) = 1/2 int |dP - gamma dQ| - 1/2 |1 - gamma|, gamma >= 0.
double e_gamma(const Distribution& p, const Distribution& q, double gamma);

/// Closed form for d/dgamma E_gamma: 1{gamma < 1} - Q[dP/dQ > gamma].
/// gamma = 1 is the kink and is rejected.
double e_gamma_derivative_check(const Distribution& p, const Distribution& q, double gamma);

struct DivergenceKind {
    enum class Type { kl, chi2, hellinger2, renyi };

    Type type = Type::kl;
    double alpha = 1.0;  // Renyi order, only for Type::renyi

    static DivergenceKind kl() { return {Type::kl, 1.0}; }
    static DivergenceKind chi2() { return {Type::chi2, 2.0}; }
    static DivergenceKind hellinger2() { return {Type::hellinger2, 0.5}; }
    static DivergenceKind renyi(double alpha);

    /// Second derivative of the generator at x (weight of E_x in the
    /// integral representation).
    double fpp(double x) const;
};

/// D_f(P||Q) in nats. Q-null cells carrying P-mass yield +infinity for
/// KL / chi2 / Renyi with alpha >= 1.
double f_divergence(const Distribution& p, const Distribution& q, const DivergenceKind& kind);

/// D_f via the E_gamma integral representation: int_0^inf E_gamma f''(gamma)
/// dgamma, quadrature on a log-spaced gamma range [1e-6, 1e6] with panels
/// split at the kink gamma = 1, truncated where E_gamma < 1e-14.
double integral_representation(const Distribution& p, const Distribution& q,
                               const DivergenceKind& kind);

/// Row-stochastic channel matrix on finite alphabets.
class ChannelMatrix {
  public:
    explicit ChannelMatrix(std::vector<std::vector<double>> rows);

    std::size_t inputs() const { return rows_.size(); }
    std::size_t outputs() const { return rows_.front().size(); }
    const std::vector<double>& row(std::size_t i) const { return rows_[i]; }

    ChannelMatrix compose(const ChannelMatrix& then) const;

  private:
    std::vector<std::vector<double>> rows_;
};

/// Dobrushin coefficient: max over input pairs of the row total variation.
double dobrushin_coefficient(const ChannelMatrix& ch);

/// Chi-square contraction coefficient at a fixed input law = squared second
/// singular value of B[x,y] = P_XY / sqrt(P_X P_Y).
double eta_chi2_discrete(std::span<const double> input, const ChannelMatrix& ch);

/// Evaluates t (1 - 2 Q(sqrt(a) t^{-(1+eps)/(2 alpha)})) + (1+alpha-alpha^2)
/// t^{1+eps} for alpha in (0,1); callers may minimize over eps on a grid.
double renyi_contraction_bound(double alpha, double a, double t, double eps);

/// Two-atom witness pair (P_q, Q_q) in G_a showing that Renyi divergences of
/// order alpha >= 1 do not contract: P = (1-p) d_0 + p d_b, Q = (1-q) d_0 +
/// q d_b with b = sqrt(a/p). For alpha = 1 requires t < a/8.
std::pair<Distribution, Distribution> noncontraction_witness(double alpha, double t, double a,
                                                             double q);

/// TV(P * P_Z, Q * P_Z) <= P[|Z| <= w1/2] for symmetric noise densities
/// non-increasing on R+ (Gaussian, Laplace, centered uniform).
double tv_w1_bound(const NoiseModel& noise, double w1);

/// 1-D Wasserstein-1 distance, int |F_P - F_Q|.
double w1_distance(const Distribution& p, const Distribution& q);

}  // namespace dcurve
