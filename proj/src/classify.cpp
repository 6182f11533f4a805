#include "skewfold/classify.hpp"

#include <algorithm>

namespace skewfold {

std::string WeightInterval::str() const {
    if (case1_degenerate) return "[0, inf) (degenerate, Case 1)";
    std::string s = lo_open ? "(" : "[";
    s += lo.str() + ", " + hi.str();
    s += hi.is_infinite() || hi_open ? ")" : "]";
    return s;
}

namespace {

WeightPlan build_plan(long long delta, const NewtonPolygon& P, int v, int case_tag) {
    WeightPlan plan;
    plan.case_tag = case_tag;
    plan.k = v;
    plan.delta = delta;
    plan.polygon = P;
    plan.gamma = P.vertices[v - 1].first;
    plan.d = P.vertices[v - 1].second;

    switch (case_tag) {
        case 1:
            plan.l1 = Rational(0);
            plan.l2 = ExtendedRational::infinity();
            break;
        case 2:
            plan.l1 = P.edge_weights[0];
            plan.l2 = ExtendedRational::infinity();
            break;
        case 3:
            plan.l1 = Rational(0);
            plan.l2 = P.edge_weights[static_cast<std::size_t>(P.s() - 2)];
            break;
        case 4: {
            plan.l1 = P.edge_weights[static_cast<std::size_t>(v - 1)];
            Rational sum = P.edge_weights[static_cast<std::size_t>(v - 2)];
            plan.l2 = sum - plan.l1;
            break;
        }
    }

    if (plan.d != Rational(delta)) plan.alpha0 = plan.gamma / (Rational(delta) - plan.d);

    bool on_boundary = std::any_of(P.intercepts.begin(), P.intercepts.end(),
                                   [&](const Rational& T) { return T == Rational(delta); });
    plan.degree_ok = plan.d >= Rational(2) || (plan.d == Rational(1) && !on_boundary);

    const Rational dl = Rational(delta);
    switch (case_tag) {
        case 1:
            plan.tilde_gamma = plan.gamma;
            plan.tilde_d = plan.d;
            break;
        case 2:
            plan.tilde_gamma = plan.gamma + plan.l1 * plan.d - plan.l1 * dl;
            plan.tilde_d = plan.d;
            break;
        case 3:
            plan.tilde_gamma = plan.gamma;
            plan.tilde_d = plan.l2.value().inverse() * plan.gamma + plan.d;
            break;
        case 4:
            plan.tilde_gamma = plan.gamma + plan.l1 * plan.d - plan.l1 * dl;
            plan.tilde_d = plan.l2.value().inverse() * plan.tilde_gamma + plan.d;
            break;
    }

    plan.M = Rational(1);
    if (case_tag == 4) {
        std::optional<Rational> min_gap;
        for (const auto& [i, j] : P.support) {
            Rational gap = plan.tilde_gamma - (i + plan.l1 * j - plan.l1 * dl);
            if (gap > Rational(0) && (!min_gap || gap < *min_gap)) min_gap = gap;
        }
        if (min_gap) plan.M = rat_min(*min_gap, Rational(1));
    }

    if (!lemma_inequalities_hold(plan))
        throw error("internal: lemma inequalities violated by a constructed plan");
    return plan;
}

}  // namespace

bool lemma_inequalities_hold(const WeightPlan& plan) {
    const Rational dl(plan.delta);
    const Rational& g = plan.gamma;
    const Rational& d = plan.d;
    switch (plan.case_tag) {
        case 1:
            // Single vertex: (gamma, d) dominates the support.
            for (const auto& [i, j] : plan.polygon.support)
                if (!(i <= g && j <= d)) return false;
            return true;
        case 2: {
            Rational lhs = g + plan.l1 * d;
            if (!(lhs >= plan.l1 * dl)) return false;
            for (const auto& [i, j] : plan.polygon.support)
                if (!(lhs >= i + plan.l1 * j)) return false;
            return true;
        }
        case 3: {
            Rational l2 = plan.l2.value();
            Rational lhs = g + l2 * d;
            if (!(l2 * dl >= lhs)) return false;
            for (const auto& [i, j] : plan.polygon.support)
                if (!(lhs >= i + l2 * j)) return false;
            return true;
        }
        case 4: {
            Rational l2 = plan.l2.value();
            Rational sum = plan.l1 + l2;
            Rational lhs1 = g + plan.l1 * d;
            Rational lhs12 = g + sum * d;
            if (!(lhs1 >= plan.l1 * dl)) return false;
            if (!(sum * dl >= lhs12)) return false;
            for (const auto& [i, j] : plan.polygon.support) {
                if (!(lhs1 >= i + plan.l1 * j)) return false;
                if (!(lhs12 >= i + sum * j)) return false;
                // Translated normal-form inequalities.
                Rational ti = i + plan.l1 * j - plan.l1 * dl;
                Rational tj = l2.inverse() * ti + j;
                if (!(plan.tilde_gamma >= ti)) return false;
                if (!(plan.tilde_d >= tj)) return false;
            }
            return true;
        }
    }
    return false;
}

std::vector<WeightPlan> classify(long long delta, const NewtonPolygon& P) {
    if (delta < 2) throw hypothesis_error("classify requires delta >= 2");
    const int s = P.s();
    const Rational dl(delta);

    std::vector<WeightPlan> plans;
    if (s == 1) {
        plans.push_back(build_plan(delta, P, 1, 1));
        return plans;
    }
    // Vertex v is dominant when delta lies in [T_{v-1}, T_v] (T_0 = -inf,
    // T_s = +inf). Interior hits produce two plans.
    for (int v = 1; v <= s; ++v) {
        bool left_ok = v == 1 || P.intercepts[static_cast<std::size_t>(v - 2)] <= dl;
        bool right_ok = v == s || dl <= P.intercepts[static_cast<std::size_t>(v - 1)];
        if (!left_ok || !right_ok) continue;
        int tag = v == 1 ? 2 : (v == s ? 3 : 4);
        plans.push_back(build_plan(delta, P, v, tag));
    }
    if (plans.empty() || plans.size() > 2)
        throw error("internal: case partition returned " + std::to_string(plans.size()) + " plans");
    if (plans.size() == 2)
        for (auto& p : plans) p.boundary = true;
    return plans;
}

WeightInterval interval(const WeightPlan& plan) {
    WeightInterval I;
    const Rational dl(plan.delta);
    switch (plan.case_tag) {
        case 1:
            I.lo = Rational(0);
            I.hi = ExtendedRational::infinity();
            I.case1_degenerate = true;
            return I;
        case 2:
            I.lo = plan.l1;
            if (plan.d < dl) I.hi = *plan.alpha0;
            else I.hi = ExtendedRational::infinity();
            return I;
        case 3:
            I.lo = *plan.alpha0;
            I.hi = plan.l2.value();
            return I;
        case 4: {
            const Rational a0 = *plan.alpha0;
            const Rational Tkm1 = plan.polygon.intercepts[static_cast<std::size_t>(plan.k - 2)];
            const Rational Tk = plan.polygon.intercepts[static_cast<std::size_t>(plan.k - 1)];
            if (Tkm1 < dl && dl == Tk) {
                I.lo = a0;  // {alpha0}
                I.hi = a0;
            } else if (Tkm1 < dl && dl < Tk) {
                I.lo = plan.l1;  // [l1, alpha0]
                I.hi = a0;
            } else {  // Tkm1 == dl < Tk
                I.lo = plan.l1;  // [l1, alpha0)
                I.hi = a0;
                I.hi_open = true;
            }
            return I;
        }
    }
    throw error("internal: unknown case tag");
}

WeightInterval interval2(const WeightPlan& plan, const Rational& l_1) {
    if (plan.case_tag != 4) throw hypothesis_error("interval2 applies to Case 4 only");
    WeightInterval I;
    Rational lo = *plan.alpha0 - l_1;
    Rational hi = plan.l1_plus_l2() - l_1;
    if (lo <= Rational(0)) {
        I.lo = Rational(0);
        I.lo_open = true;
    } else {
        I.lo = lo;
    }
    I.hi = hi;
    return I;
}

bool validate_weight(const Rational& l, const WeightPlan& plan) {
    if (!(l > Rational(0))) return false;
    const Rational dl(plan.delta);
    const Rational& g = plan.gamma;
    const Rational& d = plan.d;
    const Rational lhs = g + l * d;
    switch (plan.case_tag) {
        case 1:
        case 2:
            if (!(lhs >= l * dl)) return false;
            for (const auto& [i, j] : plan.polygon.support)
                if (!(lhs >= i + l * j)) return false;
            return true;
        case 3:
            if (!(l * dl >= lhs)) return false;
            for (const auto& [i, j] : plan.polygon.support)
                if (!(lhs >= i + l * j)) return false;
            return true;
        case 4:
            // Constraints from monomials above the vertex (j > d) are strict:
            // equality there would put a second term on the dominant line after
            // the first blow-up and the normal form fails.
            if (!(lhs >= l * dl)) return false;
            for (const auto& [i, j] : plan.polygon.support) {
                if (j > d) {
                    if (!(lhs > i + l * j)) return false;
                } else if (!(lhs >= i + l * j)) {
                    return false;
                }
            }
            return true;
    }
    return false;
}

bool validate_weight2(const WeightPlan& plan, const Rational& l_1, const Rational& l_2) {
    if (plan.case_tag != 4) throw hypothesis_error("validate_weight2 applies to Case 4 only");
    if (!(l_2 > Rational(0))) return false;
    const Rational dl(plan.delta);
    Rational tg = plan.gamma + l_1 * plan.d - l_1 * dl;
    Rational lhs = tg + l_2 * plan.d;
    if (!(l_2 * dl >= lhs)) return false;
    for (const auto& [i, j] : plan.polygon.support) {
        Rational ti = i + l_1 * j - l_1 * dl;
        if (!(lhs >= ti + l_2 * j)) return false;
    }
    return true;
}

L1Star l1_star(const WeightPlan& plan) {
    if (plan.case_tag != 1 && plan.case_tag != 2)
        throw hypothesis_error("l1_star applies to Cases 1 and 2 only");
    const Rational dl(plan.delta);
    const Rational& g = plan.gamma;
    const Rational& d = plan.d;

    // Lower bounds l >= (i - gamma)/(d - j) from monomials with j < d, plus
    // gamma/(delta - d) when delta < d. Upper bound alpha0 when delta > d.
    std::optional<Rational> lower;
    for (const auto& [i, j] : plan.polygon.support) {
        if (j < d) {
            Rational b = (i - g) / (d - j);
            if (!lower || b > *lower) lower = b;
        }
    }
    if (dl < d) {
        Rational b = g / (dl - d);
        if (!lower || b > *lower) lower = b;
    }
    if (!lower) return {false, Rational(0)};  // unbounded below
    if (dl > d && *lower > *plan.alpha0) return {false, Rational(0)};  // empty system
    return {true, *lower};
}

}  // namespace skewfold
