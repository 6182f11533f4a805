#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewfold/classify.hpp"
#include "skewfold/poly.hpp"
#include "skewfold/region.hpp"

namespace skewfold {

enum class Trichotomy { collapse_to_p_plus, induced_by_h, collapse_to_p_minus };
enum class PointStatus { superattracting, indeterminacy, not_applicable };
enum class Basin { A_plus, A_minus, closure_union, not_covered };

const char* trichotomy_name(Trichotomy t);
const char* point_status_name(PointStatus s);
const char* basin_name(Basin b);

// Behavior of the rational extension of f on P^2: degrees, the top-degree
// part h of q, and the relation of U to the basins of p+ = [0:1:0] and
// p- = [1:0:0].
struct InfinityReport {
    long long D = 0;       // deg q
    long long lambda = 0;  // max(delta, D)
    std::vector<Term> h;   // terms of q of total degree D
    ExponentPair NM;         // smallest z-degree term of h
    ExponentPair NstarMstar; // biggest z-degree term of h
    Trichotomy trichotomy = Trichotomy::induced_by_h;
    PointStatus p_plus = PointStatus::indeterminacy;
    PointStatus p_minus = PointStatus::not_applicable;
    Basin basin = Basin::not_covered;
};

InfinityReport classify_infinity(const SkewProduct& f, const WeightPlan& plan);

// Same classification on the weighted projective space P(r,s,1), l = s/r.
struct WeightedInfinityReport {
    long long r = 1;
    long long s = 1;
    Rational l;
    Rational D_l;       // max over monomials of i/l + j
    Rational lambda_l;  // max(delta, D_l)
    bool integral = false;    // lambda_l integer: the extension is rational
    bool conditional = false; // classification relies on the missing integrality
    std::vector<Term> h;
    ExponentPair NM;
    ExponentPair NstarMstar;
    Trichotomy trichotomy = Trichotomy::induced_by_h;
    PointStatus p_plus = PointStatus::indeterminacy;
    PointStatus p_minus = PointStatus::not_applicable;
    Basin basin = Basin::not_covered;
};

WeightedInfinityReport classify_weighted(const SkewProduct& f, const WeightPlan& plan,
                                         long long r, long long s);

// Closed-form catalog of A_{f0} = union of all f0-preimages of U.
struct AfoRegion {
    enum class Form {
        z_gt1_w_ne0,        // { |z| > 1, w != 0 }
        z_gt1_w_gt1,        // { |z| > 1, |w| > 1 }
        z_gt1_w_above,      // { |z| > 1, |w| > |z|^e }
        z_gt1_w_below_ne0,  // { |z| > 1, 0 < |w| < |z|^e }
        not_covered
    };
    Form form = Form::not_covered;
    std::optional<Rational> exponent;  // e above: alpha0 or l1
    int item = 0;                      // printed catalog item within the case
    std::string description;

    bool covered() const { return form != Form::not_covered; }
    // Membership by log-moduli; only called with finite y (w != 0).
    bool member_log(double x, double y) const;
};

AfoRegion afo_region(const WeightPlan& plan);

// T(l) = (delta l - gamma)/d iterated n times, exactly.
Rational T_iterate(const WeightPlan& plan, const Rational& l, int n);

// f0^{-n}(U) in the case-wise closed form.
struct PreimageRegion {
    int case_tag = 1;
    int n = 0;
    Rational z_exp;     // Cases 1, 2: |z| > R^{z_exp}, z_exp = 1/delta^n
    Rational w_exp;     // lower radius exponent 1/d^n
    Rational T_lo;      // T^n(l1) (Cases 1, 2, 4) or T^n(0) (Case 3)
    bool has_upper = false;
    Rational up_exp;    // upper radius exponent -l2/d^n
    Rational T_up;      // T^n(l1+l2) / T^n(l2)

    bool member_log(double x, double y, double logR) const;
};

PreimageRegion preimage_region(const WeightPlan& plan, int n);

// The two four-parameter families of candidate extension regions V.
struct VRegion {
    int family = 1;  // 1 or 2
    double r1 = 1.0;
    double r2 = 1.0;
    double a1 = 0.0;  // -inf allowed
    double a2 = 0.0;  // +inf allowed

    void validate(const WeightPlan& plan, const RegionSpec& spec) const;
    bool member_log(double x, double y, const WeightPlan& plan) const;
};

struct CriticalReport {
    double min_modulus = 0.0;  // min |p'(z) dq/dw| over accepted samples
    cpx argmin_z{0.0, 0.0};
    cpx argmin_w{0.0, 0.0};
    int accepted = 0;   // samples with |phi| landing in V
    int excluded = 0;   // samples whose orbit never certified into U
    bool pass = false;  // no zero of the critical polynomial encountered
    bool warning = false;
};

// Samples |phi|^{-1}(V cap R^2) through the modulus extension
// (f0|R^2)^{-n} o |phi| o f^n and reports the minimum modulus of the
// critical polynomial p'(z) * dq/dw over the accepted samples. A sampling
// check, not a proof.
CriticalReport critical_precondition(const SkewProduct& f, const WeightPlan& plan,
                                     const RegionSpec& spec, const VRegion& V, int n_samples,
                                     std::uint64_t seed, int max_lift = 20,
                                     double warn_threshold = 1e-3);

}  // namespace skewfold
