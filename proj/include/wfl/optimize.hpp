#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "wfl/linalg.hpp"

namespace wfl {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CompassResult {
    double value = kNegInf;
    Vec at;
    bool moved = false;  // the start produced at least one finite value
};

/// Coordinate compass search maximizing f from one start. Handles -inf
/// plateaus by simply never accepting them.
inline CompassResult compass_max(const std::function<double(const Vec&)>& f, Vec start,
                                 double step0, double step_min, int max_iter = 4000) {
    CompassResult r;
    r.at = std::move(start);
    r.value = f(r.at);
    r.moved = std::isfinite(r.value);
    const int n = int(r.at.size());
    double step = step0;
    int it = 0;
    while (step > step_min && it < max_iter) {
        bool improved = false;
        for (int i = 0; i < n; ++i)
            for (double s : {1.0, -1.0}) {
                ++it;
                Vec cand = r.at;
                cand[i] += s * step;
                double v = f(cand);
                if (v > r.value + 1e-15 * (1.0 + std::fabs(r.value)) ||
                    (!std::isfinite(r.value) && std::isfinite(v))) {
                    r.value = v;
                    r.at = std::move(cand);
                    r.moved = true;
                    improved = true;
                }
            }
        if (!improved) step *= 0.5;
    }
    return r;
}

/// Multi-start wrapper; returns the best result and the runner-up value of
/// the starts that reached finite objective values.
inline CompassResult compass_max_multi(const std::function<double(const Vec&)>& f,
                                       const std::vector<Vec>& starts, double step0,
                                       double step_min, double* runner_up = nullptr) {
    CompassResult best;
    double second = kNegInf;
    for (const Vec& s : starts) {
        CompassResult r = compass_max(f, s, step0, step_min);
        if (!r.moved) continue;
        if (r.value > best.value || best.at.empty()) {
            second = best.at.empty() ? kNegInf : best.value;
            best = std::move(r);
        } else if (r.value > second) {
            second = r.value;
        }
    }
    if (runner_up) *runner_up = second;
    return best;
}

}  // namespace wfl
