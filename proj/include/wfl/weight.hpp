#pragma once

#include <functional>
#include <string>

#include "wfl/steiner.hpp"

namespace wfl {

/// Convex nondecreasing weight u(t) defining the generalized functional
/// through the integrand e^{-u(d_E(x,K))}.
struct WeightFunction {
    std::string tag;  // "classical" | "p_power" | "custom"
    std::function<double(double)> eval;
    double u0 = 0.0;  // u(0)
    std::function<double(double)> inverse;  // u^{-1}(s) for s >= u(0)
    bool strictly_increasing = true;
    double p = 0.0;  // exponent for the p_power preset, else 0
};

/// u(t) = pi t^2, the classical Wills weight.
WeightFunction classical_weight();

/// u_p(t) = (2 Gamma(1+1/p) t)^p for p > 1.
WeightFunction p_power_weight(double p);

/// Custom weight; if no inverse is given a monotone bisection to 1e-12 is
/// used.
WeightFunction custom_weight(std::function<double(double)> u, double u0,
                             std::function<double(double)> inverse = {});

/// factor * u(t); keeps a closed-form inverse when u has one.
WeightFunction scaled_weight(const WeightFunction& u, double factor);

/// Spot-checks monotonicity, midpoint convexity, and u(u^{-1}(s)) = s on
/// random triples. Throws Error on violation.
void validate_weight(const WeightFunction& u, double t_hi = 10.0);

/// Moment m_i^u of the weight measure; closed form for presets, adaptive
/// quadrature otherwise. stderr_ carries the truncation bound.
ValueWithError moment(const WeightFunction& u, int i, const MCConfig& cfg);

}  // namespace wfl
