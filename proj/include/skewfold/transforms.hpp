#pragma once

#include <string>
#include <vector>

#include "skewfold/classify.hpp"
#include "skewfold/newton.hpp"
#include "skewfold/poly.hpp"

namespace skewfold {

// The four monomial substitutions of the blow-up / covering pipelines:
//   blowup1: (z, c) -> (z, z^{l1} c)          needs l1 integer
//   blowup2: (t, w) -> (t w^{1/l2}, w)        needs 1/l2 integer
//   cover1:  (z, c) -> (z^r, z^s c)           weight s/r
//   cover2:  (t, w) -> (t w^r, w^s)           weight s/r
enum class SubstKind { blowup1, blowup2, cover1, cover2 };

struct MonomialSubstitution {
    SubstKind kind = SubstKind::blowup1;
    long long r = 1;
    long long s = 1;

    static MonomialSubstitution blowup1() { return {SubstKind::blowup1, 1, 1}; }
    static MonomialSubstitution blowup2() { return {SubstKind::blowup2, 1, 1}; }
    static MonomialSubstitution cover1(long long r, long long s);
    static MonomialSubstitution cover2(long long r, long long s);

    Rational weight() const { return Rational(s, r); }
};

const char* subst_kind_name(SubstKind kind);

// Pushforward of the skew product under a substitution: dominant exponent
// pairs of both coordinates, the transformed exponent table of the second
// coordinate, and the well-definedness verdict. Exponents stay exact; the
// map itself is only materialized through the log lift.
struct TransformedMap {
    SubstKind kind = SubstKind::blowup1;
    long long r = 1;
    long long s = 1;
    int stage = 1;          // Case 4 pipelines: 1 (inner) or 2 (outer)
    int source_case = 0;    // case tag of the plan that produced it
    bool well_defined = false;
    std::string reason;     // violated condition when well_defined is false

    ExponentPair dom_first;                 // dominant exponents of coordinate 1
    ExponentPair dom_second;                // dominant exponents of coordinate 2
    std::vector<ExponentPair> term_table;   // transformed exponents of every q-monomial
    NewtonPolygon polygon;                  // polygon of the transformed second coordinate
    std::string preimage_region;            // printed shape of pi^{-1}(U)

    // Stage-1 data needed to chain the Case 4 pipeline.
    Rational gamma_t;  // dominant z-exponent after stage 1 (cover-scaled)
};

TransformedMap pushforward(const SkewProduct& f, const WeightPlan& plan,
                           const MonomialSubstitution& sub);

// Case 4 stage 2, applied to the stage-1 output. Cover parameters are read in
// stage-1 coordinates; the corresponding original weight is s2/(r2*r1).
TransformedMap pushforward_stage2(const TransformedMap& stage1, const WeightPlan& plan,
                                  const MonomialSubstitution& sub);

// True iff the transformed polygon has exactly one vertex, equal to the
// predicted dominant pair.
bool verify_normal_form(const TransformedMap& t);

struct CaseCheck {
    bool ok = false;
    int detected_case = 0;
    bool boundary_propagated = false;  // delta == T~ mirrored delta == T_{k-1}
    std::string note;
};

// Checks that a Case 4 stage-1 output classifies as Case 3 with the expected
// dominant vertex, and that the T~_{k-1} <= delta relation mirrors the
// original strict/equality split.
CaseCheck intermediate_case_check(const TransformedMap& t, const WeightPlan& plan);

}  // namespace skewfold
