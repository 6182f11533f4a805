#pragma once

#include <optional>
#include <vector>

#include "skewfold/newton.hpp"
#include "skewfold/rational.hpp"

namespace skewfold {

// A rational interval with independently open/closed ends; hi may be +inf.
struct WeightInterval {
    Rational lo;
    bool lo_open = false;
    ExtendedRational hi;
    bool hi_open = false;
    bool case1_degenerate = false;  // Case 1 has no interval; [0, inf) by convention

    bool contains(const Rational& l) const {
        if (lo_open ? !(lo < l) : !(lo <= l)) return false;
        if (hi.is_infinite()) return true;
        return hi_open ? l < hi.value() : l <= hi.value();
    }
    std::string str() const;
};

// One classification outcome: the case tag, dominant vertex, weights, and the
// derived constants every later stage consumes.
struct WeightPlan {
    int case_tag = 1;  // 1..4
    int k = 1;         // 1-based index of the dominant vertex
    Rational gamma;
    Rational d;
    Rational l1;
    ExtendedRational l2;
    std::optional<Rational> alpha0;  // gamma/(delta-d); undefined iff delta == d
    bool degree_ok = false;          // d >= 2, or d == 1 and delta != T_k for all k
    Rational M{1};                   // contraction exponent; min positive gap for Case 4
    Rational tilde_gamma;            // predicted single-vertex exponents after the
    Rational tilde_d;                // case's blow-up pipeline
    bool boundary = false;           // delta == T_k: a sibling plan exists
    long long delta = 0;
    NewtonPolygon polygon;

    long long gamma_int() const { return gamma.as_integer(); }
    long long d_int() const { return d.as_integer(); }
    Rational l1_plus_l2() const { return l1 + l2.value(); }
};

// Case selection from delta and the polygon. Returns one plan, or two when
// delta == T_k for some k (both dominant vertices, in index order).
std::vector<WeightPlan> classify(long long delta, const NewtonPolygon& P);

// I_f for Cases 2 and 3, I_f^1 for Case 4, the degenerate convention for Case 1.
WeightInterval interval(const WeightPlan& plan);

// I_f^2(l_(1)) for Case 4.
WeightInterval interval2(const WeightPlan& plan, const Rational& l_1);

// Monomial-by-monomial check of the defining inequalities; the dual route
// cross-checking interval(). For Case 4 this is membership in I_f^1.
bool validate_weight(const Rational& l, const WeightPlan& plan);

// Case 4: membership of l_2 in I_f^2(l_1).
bool validate_weight2(const WeightPlan& plan, const Rational& l_1, const Rational& l_2);

struct L1Star {
    bool exists = false;
    Rational value;
};

// Infimum of the Remark-5.2 constraint system (Cases 1 and 2 only).
L1Star l1_star(const WeightPlan& plan);

// Exact check of the per-case lemma inequalities against every support
// monomial; classify() asserts this on every plan it returns.
bool lemma_inequalities_hold(const WeightPlan& plan);

}  // namespace skewfold
