#include <doctest.h>

#include <random>

#include "skewfold/classify.hpp"
#include "skewfold/parser.hpp"
#include "support/oracles.hpp"

using namespace skewfold;

namespace {
std::vector<WeightPlan> classify_text(long long delta, const std::string& q) {
    return classify(delta, newton_polygon(parse_polynomial(q)));
}
}  // namespace

TEST_CASE("Case 1: single vertex") {
    auto plans = classify_text(2, "z*w^2");
    REQUIRE(plans.size() == 1);
    const auto& p = plans[0];
    CHECK(p.case_tag == 1);
    CHECK(p.gamma == Rational(1));
    CHECK(p.d == Rational(2));
    CHECK(p.l1 == Rational(0));
    CHECK(p.l2.is_infinite());
    CHECK(!p.alpha0);  // delta == d
    CHECK(p.degree_ok);
    CHECK(interval(p).case1_degenerate);
}

TEST_CASE("Case 2 worked instance") {
    auto plans = classify_text(3, "z^3*w^2 + z^5");
    REQUIRE(plans.size() == 1);
    const auto& p = plans[0];
    CHECK(p.case_tag == 2);
    CHECK(p.gamma == Rational(3));
    CHECK(p.d == Rational(2));
    CHECK(p.l1 == Rational(1));
    CHECK(p.l2.is_infinite());
    CHECK(*p.alpha0 == Rational(3));
    CHECK(p.tilde_gamma == Rational(2));
    WeightInterval I = interval(p);
    CHECK(I.lo == Rational(1));
    CHECK(I.hi.value() == Rational(3));
    CHECK(!I.lo_open);
    CHECK(!I.hi_open);
}

TEST_CASE("Case 3 worked instance") {
    auto plans = classify_text(6, "z^3*w^2 + w^5");
    REQUIRE(plans.size() == 1);
    const auto& p = plans[0];
    CHECK(p.case_tag == 3);
    CHECK(p.gamma == Rational(3));
    CHECK(p.d == Rational(2));
    CHECK(p.l1 == Rational(0));
    CHECK(p.l2.value() == Rational(1));
    CHECK(*p.alpha0 == Rational(3, 4));
    CHECK(p.tilde_d == Rational(5));
    WeightInterval I = interval(p);
    CHECK(I.lo == Rational(3, 4));
    CHECK(I.hi.value() == Rational(1));
}

TEST_CASE("Case 4 worked instance") {
    auto plans = classify_text(5, "w^4 + z^2*w^3 + z^3*w");
    REQUIRE(plans.size() == 1);
    const auto& p = plans[0];
    CHECK(p.case_tag == 4);
    CHECK(p.k == 2);
    CHECK(p.gamma == Rational(2));
    CHECK(p.d == Rational(3));
    CHECK(p.l1 == Rational(1, 2));
    CHECK(p.l2.value() == Rational(3, 2));
    CHECK(*p.alpha0 == Rational(1));
    CHECK(p.tilde_gamma == Rational(1));
    CHECK(p.tilde_d == Rational(11, 3));
    CHECK(p.M == Rational(1));

    WeightInterval I1 = interval(p);
    CHECK(I1.lo == Rational(1, 2));
    CHECK(I1.hi.value() == Rational(1));
    CHECK(!I1.hi_open);
    WeightInterval I2 = interval2(p, Rational(1, 2));
    CHECK(I2.lo == Rational(1, 2));
    CHECK(I2.hi.value() == Rational(3, 2));
}

TEST_CASE("Case 2 with delta <= d has an unbounded interval") {
    auto plans = classify_text(2, "z^2*w^3 + z^4*w");  // vertices (2,3),(4,1), T1 = 5
    REQUIRE(plans.size() == 1);
    CHECK(plans[0].case_tag == 2);
    WeightInterval I = interval(plans[0]);
    CHECK(I.lo == Rational(1));
    CHECK(I.hi.is_infinite());
}

TEST_CASE("two-plan boundary at delta == T_k") {
    // T1 = 3 for vertices (2,1),(3,0).
    auto plans = classify_text(3, "z^2*w + z^3");
    REQUIRE(plans.size() == 2);
    CHECK(plans[0].case_tag == 2);
    CHECK(plans[0].boundary);
    CHECK(plans[0].d == Rational(1));
    CHECK(!plans[0].degree_ok);  // d = 1 and delta = T_1
    CHECK(plans[1].case_tag == 3);
    CHECK(plans[1].boundary);
    CHECK(plans[1].d == Rational(0));
    CHECK(!plans[1].degree_ok);

    // Interior hit: delta = T_1 = 4 on the three-vertex polygon gives
    // Case 2 at vertex 1 and Case 4 at vertex 2.
    auto mid = classify_text(4, "w^4 + z^2*w^3 + z^3*w");
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].case_tag == 2);
    CHECK(mid[1].case_tag == 4);
    CHECK(mid[1].k == 2);
}

TEST_CASE("Case 4 interval sub-shapes at the boundaries") {
    // delta = T_{k-1} = 4: I^1 = [l1, alpha0), I^2 degenerates to a point.
    auto at_lower = classify_text(4, "w^4 + z^2*w^3 + z^3*w");
    const auto& p4 = at_lower[1];
    REQUIRE(p4.case_tag == 4);
    CHECK(*p4.alpha0 == Rational(2));  // gamma/(delta-d) = 2/1
    WeightInterval I1 = interval(p4);
    CHECK(I1.lo == Rational(1, 2));
    CHECK(I1.hi.value() == Rational(2));
    CHECK(I1.hi_open);
    WeightInterval I2 = interval2(p4, Rational(1, 2));
    CHECK(I2.lo == Rational(3, 2));
    CHECK(I2.hi.value() == Rational(3, 2));

    // delta = T_k = 7: I^1 = {alpha0}, I^2 = (0, l2].
    auto at_upper = classify_text(7, "w^4 + z^2*w^3 + z^3*w");
    REQUIRE(at_upper.size() == 2);
    const auto& q4 = at_upper[0];
    REQUIRE(q4.case_tag == 4);
    CHECK(*q4.alpha0 == Rational(1, 2));
    WeightInterval J1 = interval(q4);
    CHECK(J1.lo == Rational(1, 2));
    CHECK(J1.hi.value() == Rational(1, 2));
    WeightInterval J2 = interval2(q4, Rational(1, 2));
    CHECK(J2.lo == Rational(0));
    CHECK(J2.lo_open);
    CHECK(J2.hi.value() == Rational(3, 2));
}

TEST_CASE("validate_weight agrees with the interval, endpoints exact") {
    auto check_plan = [](const WeightPlan& p) {
        WeightInterval I = interval(p);
        if (I.case1_degenerate) return;
        const Rational eps(1, 1000);
        Rational lo = I.lo;
        CHECK(validate_weight(lo, p) == !I.lo_open);
        if (lo - eps > Rational(0)) CHECK(!validate_weight(lo - eps, p));
        CHECK(validate_weight(lo + eps, p) == I.contains(lo + eps));
        if (I.hi.is_finite()) {
            Rational hi = I.hi.value();
            CHECK(validate_weight(hi, p) == !I.hi_open);
            CHECK(!validate_weight(hi + eps, p));
            if (hi - eps > Rational(0)) CHECK(validate_weight(hi - eps, p) == I.contains(hi - eps));
        }
    };
    check_plan(classify_text(3, "z^3*w^2 + z^5")[0]);
    check_plan(classify_text(6, "z^3*w^2 + w^5")[0]);
    check_plan(classify_text(5, "w^4 + z^2*w^3 + z^3*w")[0]);
    check_plan(classify_text(4, "w^4 + z^2*w^3 + z^3*w")[1]);
    check_plan(classify_text(7, "w^4 + z^2*w^3 + z^3*w")[0]);

    // Spot values from the Case 2 worked instance.
    const WeightPlan c2 = classify_text(3, "z^3*w^2 + z^5")[0];
    CHECK(validate_weight(Rational(2), c2));
    CHECK(!validate_weight(Rational(1, 2), c2));
    CHECK(validate_weight(*c2.alpha0, c2));  // right endpoint, delta > d
}

TEST_CASE("validate_weight2 matches interval2") {
    const WeightPlan p = classify_text(5, "w^4 + z^2*w^3 + z^3*w")[0];
    for (const Rational& l1v : {Rational(1, 2), Rational(3, 4), Rational(1)}) {
        WeightInterval I2 = interval2(p, l1v);
        const Rational eps(1, 1000);
        CHECK(validate_weight2(p, l1v, I2.hi.value()));
        CHECK(!validate_weight2(p, l1v, I2.hi.value() + eps));
        if (I2.lo > Rational(0)) {
            CHECK(validate_weight2(p, l1v, I2.lo));
            CHECK(!validate_weight2(p, l1v, I2.lo - eps));
        }
    }
}

TEST_CASE("weight transformation l -> gamma/l + d maps interval ends onto degree bounds") {
    const WeightPlan c2 = classify_text(3, "z^3*w^2 + z^5")[0];
    auto trans = [&](const WeightPlan& p, const Rational& l) { return p.gamma / l + p.d; };
    WeightInterval I = interval(c2);
    CHECK(trans(c2, I.lo) == c2.polygon.intercepts[0]);  // l1 -> T_1
    CHECK(trans(c2, I.hi.value()) == Rational(3));       // alpha0 -> delta

    const WeightPlan c3 = classify_text(6, "z^3*w^2 + w^5")[0];
    WeightInterval J = interval(c3);
    CHECK(trans(c3, J.lo) == Rational(6));                       // alpha0 -> delta
    CHECK(trans(c3, J.hi.value()) == c3.polygon.intercepts[0]);  // l2 -> T_{s-1}
}

TEST_CASE("l1_star on the stated instances") {
    L1Star a = l1_star(classify_text(3, "z^3*w^2 + z^5")[0]);
    CHECK(a.exists);
    CHECK(a.value == Rational(1));  // Case 2: l1* = l1

    L1Star b = l1_star(classify_text(2, "z*w^2")[0]);
    CHECK(!b.exists);  // no lower-bound constraint: unbounded below

    L1Star c = l1_star(classify_text(2, "z^2*w^3")[0]);
    CHECK(c.exists);
    CHECK(c.value == Rational(-2));  // only gamma + l d >= l delta binds

    CHECK_THROWS_AS(l1_star(classify_text(6, "z^3*w^2 + w^5")[0]), hypothesis_error);
}

namespace {
// The Remark system itself, with no positivity restriction on l.
bool satisfies_l1star_system(const WeightPlan& p, const Rational& l) {
    const Rational dl(p.delta);
    if (!(p.gamma + l * p.d >= l * dl)) return false;
    for (const auto& [i, j] : p.polygon.support)
        if (!(p.gamma + l * p.d >= i + l * j)) return false;
    return true;
}
}  // namespace

TEST_CASE("l1_star agrees with the grid-scan oracle") {
    std::mt19937_64 rng(17);
    int compared = 0;
    for (int it = 0; it < 400 && compared < 60; ++it) {
        auto pts = oracle::random_support(rng, 6, 8);
        NewtonPolygon P = newton_polygon_of_points(pts);
        long long delta = 2 + (long long)(it % 5);
        auto plans = classify(delta, P);
        for (const auto& p : plans) {
            if (p.case_tag > 2) continue;
            L1Star st = l1_star(p);
            auto grid = oracle::l1_star_grid(p);
            if (st.exists) {
                CHECK(satisfies_l1star_system(p, st.value));
                CHECK(!satisfies_l1star_system(p, st.value - Rational(1, 1000)));
                // No grid value can undercut the exact infimum.
                if (grid) CHECK(st.value <= *grid);
                ++compared;
            }
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("fractional contraction exponent M in Case 4") {
    // support (0,5),(3,4),(4,1) plus interior (3,2); l1 = 1/3 at vertex 2.
    auto plans = classify_text(9, "w^5 + z^3*w^4 + z^4*w + z^3*w^2");
    REQUIRE(plans.size() == 1);
    const auto& p = plans[0];
    REQUIRE(p.case_tag == 4);
    CHECK(p.l1 == Rational(1, 3));
    CHECK(p.M == Rational(2, 3));
}

TEST_CASE("partition: exactly one plan off the boundary, two on it") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        auto pts = oracle::random_support(rng);
        NewtonPolygon P = newton_polygon_of_points(pts);
        for (long long delta = 2; delta <= 12; ++delta) {
            auto plans = classify(delta, P);
            bool on_T = std::any_of(P.intercepts.begin(), P.intercepts.end(),
                                    [&](const Rational& T) { return T == Rational(delta); });
            CHECK(plans.size() == (on_T ? 2u : 1u));
            for (const auto& p : plans) CHECK(lemma_inequalities_hold(p));
        }
    }
}
