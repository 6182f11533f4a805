#pragma once

#include <string>

#include "skewfold/lift.hpp"
#include "skewfold/region.hpp"

namespace skewfold {

// gamma_n = sum_{j=1}^{n} delta^{n-j} d^{j-1} gamma, exactly.
long long gamma_n(long long delta, long long d, long long gamma, int n);

struct BottcherEval {
    cpx phi1{0.0, 0.0};  // downstairs values phi = (phi1, phi2)
    cpx phi2{0.0, 0.0};
    cpx Phi1{0.0, 0.0};  // lift values Phi = log phi
    cpx Phi2{0.0, 0.0};
    int n_used = 0;
    double tail_bound = -1.0;  // certified lift-metric tail; -1 when not computed
    double residual = -1.0;    // max relative conjugacy residual; -1 when not computed
    bool converged = false;
};

// Certified tail of the increment series at step n. Coordinate 1 is always
// geometric in delta; coordinate 2 is geometric for d >= 2 and uses the
// (2^n R)^{-M} contraction estimate for d = 1.
struct TailModel {
    long long delta = 2;
    long long d = 1;
    long long gamma = 0;
    double eps_tilde = 0.0;  // -log(1-eps): sound bound for |log(1+u)|, |u| <= eps
    double R = 2.0;
    double M = 1.0;
    double K_d1 = 0.0;  // (C2 + gamma C1/(delta-1)) * (-log(1-eps)/eps)

    double tail1(int n) const;
    double tail2(int n) const;
    double tail(int n) const { return std::max(tail1(n), tail2(n)); }
};

TailModel make_tail_model(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec);

// Fixed-iteration partial Phi_n = F0^{-n} o F^n, no tail certificate.
BottcherEval phi_n(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                   const LogPoint& x, int n);

// Iterates until the certified tail falls below tol (or max_iter, flagged
// non-converged), then attaches the conjugacy residual. Refuses when the
// degree condition fails. extended = true runs the series in long double.
BottcherEval phi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                 const LogPoint& x, double tol, int max_iter, bool extended = false,
                 bool with_residual = true);

// Inverse of phi by damped Newton on the lift, started at y itself.
LogPoint psi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
             const LogPoint& y, double tol, int max_iter = 200);

// Shrunken region on which phi is injective: the w-bounds tightened by the
// factor (1+eps)^{2C}, C = max{1/d, l2/(2 delta)} (the l2 term drops when
// l2 is infinite).
RegionSpec injectivity_region(const WeightPlan& plan, const RegionSpec& spec, double eps);

// log chi(z) where chi(z) = lim (B_n(z)/(p^n(z))^{gamma_n/delta^n})^{1/d^n};
// requires d >= 2 and |z| > R.
cpx log_chi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec, cpx z,
            double tol, int max_iter = 200);

cpx chi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec, cpx z, double tol,
        int max_iter = 200);

struct DerivedCoords {
    bool has_tilde2 = false;
    cpx phi_tilde2{0.0, 0.0};       // phi2 / chi, conjugates f to (p(z), b(z) w^d)
    double tilde2_residual = -1.0;
    std::string tilde2_reason;

    bool has_alpha0 = false;
    cpx phi_alpha0{0.0, 0.0};       // phi2 / phi1^{alpha0}, conjugates f to the diagonal model
    double alpha0_residual = -1.0;
    std::string alpha0_reason;
};

DerivedCoords derived_coordinates(const SkewProduct& f, const WeightPlan& plan,
                                  const RegionSpec& spec, const LogPoint& x, double tol,
                                  int max_iter = 200);

}  // namespace skewfold
