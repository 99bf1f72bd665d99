#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dcurve {

/// Strictly increasing convex cost M with M(0) = 0 and a closed-form
/// inverse: x^p (p >= 1), exp(a x) - 1, or exp(a x^2) - 1.
class CostFunction {
  public:
    enum class Family { power, sub_exp, sub_gauss };

    static CostFunction power(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("power cost: p must be >= 1");
        return CostFunction(Family::power, p);
    }
    static CostFunction sub_exp(double alpha) {
        if (!(alpha > 0.0)) throw std::invalid_argument("sub_exp cost: alpha must be > 0");
        return CostFunction(Family::sub_exp, alpha);
    }
    static CostFunction sub_gauss(double alpha) {
        if (!(alpha > 0.0)) throw std::invalid_argument("sub_gauss cost: alpha must be > 0");
        return CostFunction(Family::sub_gauss, alpha);
    }

    double operator()(double x) const {
        if (x < 0.0) throw std::domain_error("cost: argument must be >= 0");
        switch (family_) {
            case Family::power: return std::pow(x, param_);
            case Family::sub_exp: return std::expm1(param_ * x);
            case Family::sub_gauss: return std::expm1(param_ * x * x);
        }
        return 0.0;
    }

    double inverse(double y) const {
        if (y < 0.0) throw std::domain_error("cost_inv: argument must be >= 0");
        switch (family_) {
            case Family::power: return std::pow(y, 1.0 / param_);
            case Family::sub_exp: return std::log1p(y) / param_;
            case Family::sub_gauss: return std::sqrt(std::log1p(y) / param_);
        }
        return 0.0;
    }

    Family family() const { return family_; }
    double param() const { return param_; }

    std::string label() const {
        switch (family_) {
            case Family::power: return "power:" + std::to_string(param_);
            case Family::sub_exp: return "subexp:" + std::to_string(param_);
            case Family::sub_gauss: return "subgauss:" + std::to_string(param_);
        }
        return {};
    }

  private:
    CostFunction(Family f, double p) : family_(f), param_(p) {}

    Family family_;
    double param_;
};

}  // namespace dcurve
