#include "skewfold/transforms.hpp"

#include <numeric>

namespace skewfold {

namespace {

std::vector<ExponentPair> support_of(const WeightPlan& plan) { return plan.polygon.support; }

NewtonPolygon polygon_of(const std::vector<ExponentPair>& table) {
    return newton_polygon_of_points(table);
}

}  // namespace

const char* subst_kind_name(SubstKind kind) {
    switch (kind) {
        case SubstKind::blowup1: return "blowup1";
        case SubstKind::blowup2: return "blowup2";
        case SubstKind::cover1: return "cover1";
        case SubstKind::cover2: return "cover2";
    }
    return "?";
}

MonomialSubstitution MonomialSubstitution::cover1(long long r, long long s) {
    if (r < 1 || s < 1 || std::gcd(r, s) != 1)
        throw hypothesis_error("cover parameters must be coprime positive integers");
    return {SubstKind::cover1, r, s};
}

MonomialSubstitution MonomialSubstitution::cover2(long long r, long long s) {
    if (r < 1 || s < 1 || std::gcd(r, s) != 1)
        throw hypothesis_error("cover parameters must be coprime positive integers");
    return {SubstKind::cover2, r, s};
}

TransformedMap pushforward([[maybe_unused]] const SkewProduct& f, const WeightPlan& plan,
                           const MonomialSubstitution& sub) {
    const Rational dl(plan.delta);
    TransformedMap t;
    t.kind = sub.kind;
    t.r = sub.r;
    t.s = sub.s;
    t.source_case = plan.case_tag;

    switch (sub.kind) {
        case SubstKind::blowup1: {
            if (plan.case_tag != 2 && plan.case_tag != 4)
                throw hypothesis_error("blowup1 applies to Case 2 or Case 4 stage 1");
            t.stage = 1;
            // (i, j) -> (i + l1 j - l1 delta, j)
            for (const auto& [i, j] : support_of(plan))
                t.term_table.emplace_back(i + plan.l1 * j - plan.l1 * dl, j);
            t.dom_second = {plan.tilde_gamma, plan.d};
            t.dom_first = {dl, Rational(0)};
            t.gamma_t = plan.tilde_gamma;
            if (plan.l1.is_integer() && plan.l1 >= Rational(1)) {
                t.well_defined = true;
            } else {
                t.reason = "l1 = " + plan.l1.str() + " not in N";
            }
            t.preimage_region = plan.case_tag == 2
                                    ? "{ |z| > R, |c| > R }"
                                    : "{ |z| > R |c|^{1/l2}, |c| > R }";
            break;
        }
        case SubstKind::cover1: {
            if (plan.case_tag != 2 && plan.case_tag != 4)
                throw hypothesis_error("cover1 applies to Case 2 or Case 4 stage 1");
            t.stage = 1;
            const Rational r(sub.r), s(sub.s);
            // (i, j) -> (r i + s j - s delta, j)
            for (const auto& [i, j] : support_of(plan))
                t.term_table.emplace_back(r * i + s * j - s * dl, j);
            t.gamma_t = r * plan.gamma + s * plan.d - s * dl;
            t.dom_second = {t.gamma_t, plan.d};
            t.dom_first = {dl, Rational(0)};
            bool in_interval = validate_weight(sub.weight(), plan);
            if (in_interval) {
                t.well_defined = true;
            } else {
                t.reason = "weight " + sub.weight().str() + " outside " +
                           (plan.case_tag == 2 ? std::string("I_f") : std::string("I_f^1"));
            }
            t.preimage_region = plan.case_tag == 2
                                    ? "{ |z| > R^{1/r}, |c| > R }"
                                    : "{ |z|^{r l2} > R^{l2} |c|, |c| > R }";
            break;
        }
        case SubstKind::blowup2: {
            if (plan.case_tag != 3)
                throw hypothesis_error("blowup2 on a skew product applies to Case 3");
            t.stage = 1;
            Rational kappa = plan.l2.value().inverse();
            if (!(kappa.is_integer() && kappa >= Rational(1))) {
                t.reason = "1/l2 = " + kappa.str() + " not in N";
            } else {
                t.well_defined = true;
            }
            // (i, j) -> (i, kappa i + j)
            for (const auto& [i, j] : support_of(plan))
                t.term_table.emplace_back(i, kappa * i + j);
            t.dom_second = {plan.gamma, plan.tilde_d};
            t.dom_first = {dl - kappa * plan.gamma, kappa * (dl - plan.tilde_d)};
            t.gamma_t = plan.gamma;
            t.preimage_region = "{ |t| > R, |w| > R }";
            break;
        }
        case SubstKind::cover2: {
            if (plan.case_tag != 3)
                throw hypothesis_error("cover2 on a skew product applies to Case 3");
            t.stage = 1;
            const Rational r(sub.r), s(sub.s);
            Rational gs = plan.gamma / s;
            bool in_interval = validate_weight(sub.weight(), plan);
            bool integral = gs.is_integer() && gs >= Rational(1);
            if (!in_interval) {
                t.reason = "weight " + sub.weight().str() + " outside I_f";
            } else if (!integral) {
                t.reason = "gamma/s = " + gs.str() + " not in N";
            } else {
                t.well_defined = true;
            }
            // eta keeps its exponent gaps through the s-th root: the table is
            // dominant + (i - gamma, r(i - gamma) + s(j - d)).
            Rational dom2 = r * gs + plan.d;
            for (const auto& [i, j] : support_of(plan))
                t.term_table.emplace_back(gs + (i - plan.gamma),
                                          dom2 + r * (i - plan.gamma) + s * (j - plan.d));
            t.dom_second = {gs, dom2};
            t.dom_first = {dl - r * gs, r * dl - r * (r * gs + plan.d)};
            t.gamma_t = gs;
            t.preimage_region = "{ |t| > R, |w| > R^{1/s} }";
            break;
        }
    }
    t.polygon = polygon_of(t.term_table);
    return t;
}

TransformedMap pushforward_stage2(const TransformedMap& stage1, const WeightPlan& plan,
                                  const MonomialSubstitution& sub) {
    if (plan.case_tag != 4) throw hypothesis_error("stage-2 pushforward applies to Case 4");
    if (stage1.stage != 1 || (stage1.kind != SubstKind::blowup1 && stage1.kind != SubstKind::cover1))
        throw hypothesis_error("stage-2 pushforward needs a stage-1 (blowup1/cover1) output");

    const Rational dl(plan.delta);
    const Rational gamma_t = stage1.gamma_t;
    TransformedMap t;
    t.kind = sub.kind;
    t.r = sub.r;
    t.s = sub.s;
    t.stage = 2;
    t.source_case = 4;

    if (sub.kind == SubstKind::blowup2) {
        if (stage1.kind != SubstKind::blowup1)
            throw hypothesis_error("blowup2 stage 2 requires a blowup1 stage 1 (integer weights)");
        Rational kappa = plan.l2.value().inverse();
        bool stage1_ok = stage1.well_defined;
        if (!(kappa.is_integer() && kappa >= Rational(1))) {
            t.reason = "1/l2 = " + kappa.str() + " not in N";
        } else if (!stage1_ok) {
            t.reason = "stage 1 not well defined: " + stage1.reason;
        } else {
            t.well_defined = true;
        }
        for (const auto& [i, j] : stage1.term_table)
            t.term_table.emplace_back(i, kappa * i + j);
        t.dom_second = {gamma_t, kappa * gamma_t + plan.d};
        t.dom_first = {dl - kappa * gamma_t, kappa * (dl - (kappa * gamma_t + plan.d))};
        t.gamma_t = gamma_t;
        t.preimage_region = "{ |t| > R, |c| > R }";
    } else if (sub.kind == SubstKind::cover2) {
        const Rational r2(sub.r), s2(sub.s);
        // Stage-2 parameters live in stage-1 coordinates; the original weight
        // they realize is (s2/r2)/r1.
        Rational l1_used = stage1.kind == SubstKind::cover1 ? Rational(stage1.s, stage1.r) : plan.l1;
        Rational stage1_scale(stage1.kind == SubstKind::cover1 ? stage1.r : 1);
        Rational l2_used = sub.weight() / stage1_scale;
        Rational gs = gamma_t / s2;
        bool in_interval = validate_weight2(plan, l1_used, l2_used);
        bool integral = gs.is_integer() && gs >= Rational(0);
        if (!stage1.well_defined) {
            t.reason = "stage 1 not well defined: " + stage1.reason;
        } else if (!in_interval) {
            t.reason = "weight " + l2_used.str() + " outside I_f^2(" + l1_used.str() + ")";
        } else if (!integral) {
            t.reason = "gamma~/s2 = " + gs.str() + " not in N u {0}";
        } else {
            t.well_defined = true;
        }
        Rational dom2 = r2 * gs + plan.d;
        for (const auto& [i, j] : stage1.term_table)
            t.term_table.emplace_back(gs + (i - gamma_t), dom2 + r2 * (i - gamma_t) + s2 * (j - plan.d));
        t.dom_second = {gs, dom2};
        t.dom_first = {dl - r2 * gs, r2 * dl - r2 * (r2 * gs + plan.d)};
        t.gamma_t = gs;
        t.preimage_region = "{ |t c^{(1-1/r1) r2}| > R^{1/r1}, |c| > R^{1/s1} }";
    } else {
        throw hypothesis_error("stage-2 substitution must be blowup2 or cover2");
    }
    t.polygon = polygon_of(t.term_table);
    return t;
}

bool verify_normal_form(const TransformedMap& t) {
    return t.polygon.s() == 1 && t.polygon.vertices.front() == t.dom_second;
}

CaseCheck intermediate_case_check(const TransformedMap& t, const WeightPlan& plan) {
    CaseCheck out;
    if (plan.case_tag != 4) throw hypothesis_error("intermediate_case_check applies to Case 4");

    auto plans = classify(plan.delta, t.polygon);
    const WeightPlan* case3 = nullptr;
    for (const auto& p : plans)
        if (p.case_tag == 3) case3 = &p;
    if (!case3) {
        out.detected_case = plans.front().case_tag;
        out.note = plans.front().case_tag == 1
                       ? "wrong pipeline: stage-1 polygon is already single-vertex (Case 1)"
                       : "stage-1 polygon did not classify as Case 3";
        return out;
    }
    out.detected_case = 3;
    if (!(case3->gamma == t.dom_second.first && case3->d == t.dom_second.second)) {
        out.note = "Case 3 dominant vertex differs from the stage-1 dominant pair";
        return out;
    }

    // T~_{k-1} <= delta must mirror the original comparison exactly.
    const Rational dl(plan.delta);
    Rational T_orig = plan.polygon.intercepts[static_cast<std::size_t>(plan.k - 2)];
    Rational T_tilde = t.polygon.intercepts.back();
    bool orig_strict = T_orig < dl;
    bool tilde_strict = T_tilde < dl;
    bool orig_eq = T_orig == dl;
    bool tilde_eq = T_tilde == dl;
    if (orig_strict != tilde_strict || orig_eq != tilde_eq) {
        out.note = "T~ relation does not mirror the original T_{k-1} vs delta relation";
        return out;
    }
    out.boundary_propagated = tilde_eq;
    out.ok = true;
    return out;
}

}  // namespace skewfold
