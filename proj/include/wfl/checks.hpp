#pragma once

#include <array>
#include <string>

#include "wfl/logconcave.hpp"

namespace wfl {

struct CheckEntry {
    int id;
    const char* name;
    const char* statement;
    bool informational;
    bool expected_violated;
};

const std::vector<CheckEntry>& check_registry();

/// Inputs of one registry evaluation; fields are read per entry and the
/// rest are ignored.
struct CheckInputs {
    std::vector<BodyPtr> bodies;             // K (and L) where applicable
    BodyPtr gauge;                           // E, default unit ball
    std::shared_ptr<WeightFunction> weight;  // u, default classical
    double lambda = 0.5;
    int k = 0;        // projection subspace dimension, 0 = default per entry
    int dim = 0;      // ambient dimension for the parametric entries
    double r = -1.0;  // slice extent (entry 26), < 0 picks one automatically
    int directions = 64;
};

struct InequalityReport {
    int check_id = 0;
    std::string name;
    std::string inputs;
    double lhs = 0.0, rhs = 0.0;
    double lhs_stderr = 0.0, rhs_stderr = 0.0;
    double margin = 0.0;       // oriented so >= 0 means the statement holds
    double uncertainty = 0.0;  // 3 sigma plus truncation bounds
    std::string verdict;       // holds | violated | inconclusive | informational
    std::string notes;
    std::uint64_t seed = 0, samples = 0;
    bool expected_violated = false;
};

InequalityReport run_check(int id, const CheckInputs& in, const MCConfig& cfg);
InequalityReport run_check(const std::string& name, const CheckInputs& in, const MCConfig& cfg);

/// Coefficients of phi(t) = a1 + a2 t + a3 t^2 with moments
/// int_0^a phi t^i = 1/kappa_i for i = 0,1,2; closed form cross-checked
/// against a direct 3x3 solve to 1e-10.
struct PhiSolution {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::array<double, 3> residuals{};
};
PhiSolution solve_phi(double a);

/// Compares W((1-l)K + lL) with the p-mean of W(K), W(L); p = 0 is the
/// geometric mean.
struct ConcavityProbe {
    double lhs = 0.0, rhs = 0.0;
    double margin = 0.0, uncertainty = 0.0;
};
ConcavityProbe probe_concavity(const Body& k, const Body& l, double lambda, double p,
                               const MCConfig& cfg);

/// Classical Wills values of hyperplane projections over sampled sphere
/// directions, with the comparison constants.
struct ProjectionExtrema {
    double max_value = 0.0, min_value = 0.0;
    double fraction_above = 0.0;
    double c_n = 0.0, d_n = 0.0;
    int directions = 0;
};
ProjectionExtrema projection_extrema(const Body& k, int directions, const MCConfig& cfg);

/// min{binom(2n,n), 8^{n/2}}
double gaussian_upper_constant(int n);

/// Closed-form classical Wills value of r B_2^n.
double ball_wills(int n, double r);

}  // namespace wfl
