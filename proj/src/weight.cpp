#include "wfl/weight.hpp"

#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/rng.hpp"

namespace wfl {

namespace {

const double kPi = 3.14159265358979323846;

double bisect_inverse(const std::function<double(double)>& u, double u0, double s) {
    if (s <= u0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (u(hi) < s) {
        hi *= 2.0;
        if (++guard > 400) throw UnboundedSupport("weight never reaches the requested level");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (u(mid) < s)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

WeightFunction classical_weight() {
    WeightFunction w;
    w.tag = "classical";
    w.eval = [](double t) { return kPi * t * t; };
    w.u0 = 0.0;
    w.inverse = [](double s) { return std::sqrt(std::max(0.0, s) / kPi); };
    return w;
}

WeightFunction p_power_weight(double p) {
    if (p <= 1.0) throw Error("p_power weight needs p > 1");
    double c = 2.0 * std::tgamma(1.0 + 1.0 / p);
    WeightFunction w;
    w.tag = "p_power";
    w.p = p;
    w.eval = [c, p](double t) { return std::pow(c * t, p); };
    w.u0 = 0.0;
    w.inverse = [c, p](double s) { return std::pow(std::max(0.0, s), 1.0 / p) / c; };
    return w;
}

WeightFunction custom_weight(std::function<double(double)> u, double u0,
                             std::function<double(double)> inverse) {
    WeightFunction w;
    w.tag = "custom";
    w.eval = u;
    w.u0 = u0;
    if (inverse)
        w.inverse = std::move(inverse);
    else
        w.inverse = [u, u0](double s) { return bisect_inverse(u, u0, s); };
    return w;
}

WeightFunction scaled_weight(const WeightFunction& u, double factor) {
    if (factor <= 0.0) throw Error("weight scale factor must be positive");
    WeightFunction w;
    w.tag = "custom";
    auto base_eval = u.eval;
    auto base_inv = u.inverse;
    w.eval = [base_eval, factor](double t) { return factor * base_eval(t); };
    w.u0 = factor * u.u0;
    w.inverse = [base_inv, factor](double s) { return base_inv(s / factor); };
    w.strictly_increasing = u.strictly_increasing;
    return w;
}

void validate_weight(const WeightFunction& u, double t_hi) {
    SampleRng rng(17, 31, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        double a = rng.uniform(0.0, t_hi);
        double b = rng.uniform(0.0, t_hi);
        if (a > b) std::swap(a, b);
        double ua = u.eval(a), ub = u.eval(b);
        if (!(ua <= ub + 1e-10)) throw Error("weight is not nondecreasing");
        double um = u.eval(0.5 * (a + b));
        if (!(um <= 0.5 * (ua + ub) + 1e-10)) throw Error("weight is not midpoint convex");
        double s = u.u0 + rng.uniform(0.0, 20.0);
        double t = u.inverse(s);
        if (std::isfinite(u.eval(t)) && std::fabs(u.eval(t) - s) > 1e-8 * (1.0 + std::fabs(s)))
            throw Error("weight inverse is inconsistent");
    }
}

ValueWithError moment(const WeightFunction& u, int i, const MCConfig& cfg) {
    if (!u.strictly_increasing) throw Error("moment needs a strictly increasing weight");
    if (i < 0) throw Error("negative moment index");
    if (i == 0) return {std::exp(-u.u0), 0.0};
    if (u.tag == "classical") return {1.0 / kappa(i), 0.0};
    if (u.tag == "p_power") {
        double c = 2.0 * std::tgamma(1.0 + 1.0 / u.p);
        return {std::tgamma(1.0 + double(i) / u.p) / std::pow(c, i), 0.0};
    }
    // m_i = e^{-u0} int_0^1 u^{-1}(u0 - ln(1-q))^i dq
    const double q_max = 1.0 - std::exp(-cfg.s_max);
    auto f = [&](double q) {
        double s = u.u0 - std::log1p(-std::min(q, q_max));
        return std::pow(u.inverse(s), double(i));
    };
    double t_cap = u.inverse(u.u0 + cfg.s_max);
    double trunc = std::exp(-(u.u0 + cfg.s_max)) * std::pow(t_cap, double(i));
    double val = std::exp(-u.u0) * integrate(f, 0.0, q_max, 1e-12 * (1.0 + std::pow(t_cap, i)));
    if (trunc > 1e-3 * std::fabs(val) + 1e-300)
        throw DivergentMoment("weight tail does not decay before the truncation point");
    return {val, trunc};
}

}  // namespace wfl
