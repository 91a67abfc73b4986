#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "wfl/wills.hpp"

namespace wfl {

/// f = e^{-neg_log} with neg_log convex; +inf encodes f = 0.
struct LogConcaveFn {
    int dim = 0;
    std::string kind;  // "indicator" | "gaussian_like" | "wills_kernel" | "generic"
    std::function<double(const Vec&)> neg_log;
    std::optional<Vec> maximizer_hint;
    BodyPtr effective_support;  // f < 1e-16 sup f outside; null if unknown

    // structural payloads for the shortcut kinds
    BodyPtr body;   // indicator / wills_kernel: the set K
    BodyPtr gauge;  // gaussian_like / wills_kernel: the gauge body E
    std::shared_ptr<WeightFunction> weight;
};

double eval_fn(const LogConcaveFn& f, const Vec& x);

LogConcaveFn indicator_fn(BodyPtr k);
/// e^{-u(|x|_E)}
LogConcaveFn gauge_exp_fn(BodyPtr e, const WeightFunction& u);
/// e^{-u(d_E(x,K))}, the kernel whose integral is the generalized functional
LogConcaveFn wills_kernel_fn(BodyPtr k, BodyPtr e, const WeightFunction& u);
LogConcaveFn generic_fn(int dim, std::function<double(const Vec&)> neg_log,
                        std::optional<Vec> maximizer_hint = std::nullopt,
                        BodyPtr effective_support = nullptr);

/// Forces the generic optimization path (for shortcut-vs-generic tests).
LogConcaveFn as_generic(const LogConcaveFn& f);

/// Spot-check of midpoint convexity of neg_log on random triples.
void validate_logconcave(const LogConcaveFn& f, double radius = 4.0);

/// (f * g)(z) = sup_{z=x+y} f(x) g(y)
double asplund(const LogConcaveFn& f, const LogConcaveFn& g, const Vec& z);

/// integral convolution (f * g)(z) = int f(x) g(z-x) dx
ValueWithError convolve(const LogConcaveFn& f, const LogConcaveFn& g, const Vec& z,
                        const MCConfig& cfg);

/// sup over z = (1-l)x + l y of f(x/(1-l))^{1-l} g(-y/l)^l
double lambda_difference(const LogConcaveFn& f, const LogConcaveFn& g, double lambda, const Vec& z);

/// (P_H f)(x) = sup over the orthogonal complement of f(x + y)
double project_fn(const LogConcaveFn& f, const Subspace& h, const Vec& x_h);

/// Legendre transform sup_y <x,y> - phi(y); +inf when the sup diverges.
double legendre(const std::function<double(const Vec&)>& phi, int dim, const Vec& x);

/// f polar: e^{-L(-log f)(x)}
double polar_fn(const LogConcaveFn& f, const Vec& x);

/// |v|_{Pi* f} = 2 int over the hyperplane through 0 of the projected f
ValueWithError polar_projection_norm(const LogConcaveFn& f, const Vec& v, const MCConfig& cfg);

/// vol(Pi* f) = kappa_n * average over the sphere of |v|^{-n}
ValueWithError polar_projection_volume(const LogConcaveFn& f, const MCConfig& cfg);

}  // namespace wfl
