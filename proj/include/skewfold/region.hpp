#pragma once

#include <cstdint>
#include <vector>

#include "skewfold/classify.hpp"
#include "skewfold/lift.hpp"
#include "skewfold/poly.hpp"

namespace skewfold {

// The invariant region U near infinity. Shapes by case:
//   Case 1: |z| > R, |w| > R
//   Case 2: |z| > R, |w| > R |z|^{l1}
//   Case 3: R < |w| < R^{-l2} |z|^{l2}
//   Case 4: R |z|^{l1} < |w| < R^{-l2} |z|^{l1+l2}
// log_margin > 0 shrinks the w-bounds (injectivity regions).
struct RegionSpec {
    int case_tag = 1;
    double R = 2.0;
    double eps = 0.01;  // certified sup bound for |zeta|, |eta| on U
    Rational l1;
    ExtendedRational l2;
    double log_margin = 0.0;

    double log_R() const;
    bool member(cpx z, cpx w) const;
    bool member_log(double x, double y) const;  // x = log|z|, y = log|w|
    // Same shape with radius R' in place of R.
    RegionSpec with_R(double R2) const;
};

RegionSpec spec_for(const WeightPlan& plan, double R, double eps);

// Smallest R (floored at 2) for which the term-wise proof bounds certify
// sup_U |zeta| < eps, sup_U |eta| < eps and the margin constants give
// f(U) subset U. Refuses when the degree condition fails.
RegionSpec estimate_R(const SkewProduct& f, const WeightPlan& plan, double eps);

// Deterministic log-uniform samples of U: moduli uniform in the log cone
// truncated 20 units above the vertex scale, phases uniform.
std::vector<LogPoint> sample_region(const RegionSpec& spec, int n, std::uint64_t seed);

struct VerifyReport {
    double max_zeta = 0.0;
    double max_eta = 0.0;
    std::vector<std::pair<cpx, cpx>> violations;  // witness sample points (z, w)
    double R = 0.0;
    double eps = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Sampled sup of |zeta|, |eta| over U against eps.
VerifyReport verify_bounds(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                           double eps, int n_samples, std::uint64_t seed, int threads = 1);

// f(x) in U for every sample x in U.
VerifyReport verify_invariance(const SkewProduct& f, const WeightPlan& plan,
                               const RegionSpec& spec, int n_samples, std::uint64_t seed,
                               int threads = 1);

// d = 1 contraction: f^n(U_R) subset U_{2^n R} for n <= n_steps.
VerifyReport verify_contraction(const SkewProduct& f, const WeightPlan& plan,
                                const RegionSpec& spec, int n_steps, int n_samples,
                                std::uint64_t seed, int threads = 1);

}  // namespace skewfold
