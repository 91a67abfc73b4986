#pragma once

#include <optional>
#include <string>

#include "wfl/body.hpp"
#include "wfl/mc.hpp"

namespace wfl {

/// Volume of the n-dimensional unit ball.
double kappa(int n);

struct ValueWithError {
    double value = 0.0;
    double stderr_ = 0.0;
};

/// Coefficients W_i(K;E) of vol(K + tE) = sum binom(n,i) W_i t^i.
struct SteinerCoefficients {
    int n = 0;
    Vec W;
    std::string method;  // "closed_form" | "mc_fit"
    Vec stderr_;
};

struct IntrinsicVolumes {
    Vec v;        // V_0 .. V_n
    Vec stderr_;  // zero when exact
    bool exact = false;
};

/// Closed-form volume where the body structure allows it.
std::optional<double> exact_volume(const Body& k);

/// Volume, exact when possible, Monte-Carlo membership otherwise.
ValueWithError volume(const Body& k, const MCConfig& cfg);

/// Closed-form intrinsic volumes where the body structure allows it.
std::optional<Vec> exact_intrinsic_volumes(const Body& k);

IntrinsicVolumes intrinsic_volumes(const Body& k, const MCConfig& cfg);

/// Closed-form relative Steiner coefficients where available.
std::optional<Vec> exact_relative_steiner(const Body& k, const Body& e);

/// Monte-Carlo polynomial fit of vol(K + tE).
SteinerCoefficients steiner_fit(const Body& k, const Body& e, const MCConfig& cfg);

/// Closed form if available, otherwise steiner_fit.
SteinerCoefficients relative_steiner(const Body& k, const Body& e, const MCConfig& cfg);

ValueWithError mean_width_V1(const Body& k, const MCConfig& cfg);

}  // namespace wfl
