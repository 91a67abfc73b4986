#pragma once

#include <string>

#include "wfl/body.hpp"
#include "wfl/weight.hpp"

namespace wfl {

/// Weighted Steiner route: sum binom(n,i) m_i^u W_i(K;E).
ValueWithError wills_sum(const Body& k, const Body& e, const WeightFunction& u, const MCConfig& cfg);

/// Direct integral route: MC estimate of int e^{-u(d_E(x,K))} dx.
ValueWithError wills_mc(const Body& k, const Body& e, const WeightFunction& u, const MCConfig& cfg);

/// Layer-cake route: quadrature in s of vol(K + u^{-1}(s)E) e^{-s} with
/// common random numbers across the quadrature nodes.
ValueWithError wills_radial(const Body& k, const Body& e, const WeightFunction& u,
                            const MCConfig& cfg);

/// Classical Wills functional W(K); exact whenever the intrinsic volumes are.
ValueWithError classical_wills(const Body& k, const MCConfig& cfg);

/// gamma_n(y + K) by standard normal sampling.
ValueWithError gaussian_measure(const Body& k, const Vec& y, const MCConfig& cfg);

struct GaussianSupResult {
    double value = 0.0;
    double stderr_ = 0.0;
    Vec at;
    std::string flag;  // "assumed_symmetric_max" | "search_lower_bound"
};

/// sup over y of gamma_n(y + K): evaluated at y = 0 for symmetric bodies,
/// otherwise a coordinate-search lower bound.
GaussianSupResult sup_gaussian(const Body& k, const MCConfig& cfg);

}  // namespace wfl
