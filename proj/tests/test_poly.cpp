#include <doctest.h>

#include <random>

#include "skewfold/classify.hpp"
#include "skewfold/parser.hpp"
#include "skewfold/poly.hpp"

using namespace skewfold;

namespace {

Poly P(const std::string& text) { return parse_polynomial(text); }

// Independent term-by-term sum at a point.
cpx term_sum(const Poly& q, cpx z, cpx w) {
    cpx acc(0.0);
    for (const auto& t : q.terms()) {
        cpx zi(1.0), wj(1.0);
        for (long long k = 0; k < t.ez.as_integer(); ++k) zi *= z;
        for (long long k = 0; k < t.ew.as_integer(); ++k) wj *= w;
        acc += t.coeff * zi * wj;
    }
    return acc;
}

Poly random_poly(std::mt19937_64& rng, int max_terms = 6, long long max_exp = 8) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<long long> expo(0, max_exp);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::vector<Term> ts;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        ts.push_back(Term{Rational(expo(rng)), Rational(expo(rng)), cpx(coeff(rng), coeff(rng))});
    return Poly(ts);
}

}  // namespace

TEST_CASE("evaluate on the stated points") {
    CHECK(evaluate(P("z^3*w^2 + z^5"), cpx(1.0), cpx(1.0)) == cpx(2.0));
    CHECK(evaluate(P("z^3*w^2"), cpx(2.0), cpx(3.0)) == cpx(72.0));
    // Mixed complex point, checked against the independent term sum.
    cpx z(2.0, 0.0), w(0.0, 2.0);
    cpx expect = term_sum(P("z^3*w^2 + z^5"), z, w);
    CHECK(std::abs(evaluate(P("z^3*w^2 + z^5"), z, w) - expect) < 1e-12);
}

TEST_CASE("duplicate monomials merge, zeros drop") {
    Poly q(std::vector<Term>{{Rational(1), Rational(2), cpx(2.0)},
                             {Rational(1), Rational(2), cpx(3.0)},
                             {Rational(0), Rational(1), cpx(1.0)},
                             {Rational(0), Rational(1), cpx(-1.0)}});
    REQUIRE(q.size() == 1);
    CHECK(q.terms()[0].coeff == cpx(5.0));
}

TEST_CASE("principal powers: branch cut rejected for fractional exponents") {
    Poly q(std::vector<Term>{{Rational(1, 2), Rational(0), cpx(1.0)}});
    CHECK_THROWS_AS(evaluate(q, cpx(-2.0, 0.0), cpx(1.0)), branch_ambiguity_error);
    CHECK_THROWS_AS(evaluate(q, cpx(0.0, 0.0), cpx(1.0)), branch_ambiguity_error);
    // Off the cut the principal branch applies: (4)^{1/2} = 2.
    CHECK(std::abs(evaluate(q, cpx(4.0, 0.0), cpx(1.0)) - cpx(2.0)) < 1e-14);
    // Negative real base with integer exponent stays exact.
    Poly cube(std::vector<Term>{{Rational(3), Rational(0), cpx(1.0)}});
    CHECK(evaluate(cube, cpx(-2.0, 0.0), cpx(1.0)) == cpx(-8.0));
}

TEST_CASE("evaluate is linear in the coefficient vector") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        Poly a = random_poly(rng), b = random_poly(rng);
        cpx z(1.3, -0.4), w(0.7, 0.9);
        cpx lhs = evaluate(a + b, z, w);
        cpx rhs = evaluate(a, z, w) + evaluate(b, z, w);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("skew product construction enforces the standing assumptions") {
    CHECK_THROWS_AS(SkewProduct::make(P("z"), P("w^2")), hypothesis_error);        // delta = 1
    CHECK_THROWS_AS(SkewProduct::make(P("z^2"), P("w")), hypothesis_error);        // deg q = 1
    CHECK_THROWS_AS(SkewProduct::make(P("z^2"), P("z^3")), hypothesis_error);      // no w
    CHECK_THROWS_AS(SkewProduct::make(P("z^2 + w"), P("z*w^2")), hypothesis_error);  // p not univariate
    SkewProduct f = SkewProduct::make(P("2*z^3 + z"), P("z^3*w^2 + z^5"));
    CHECK(f.delta == 3);
    CHECK(f.a_delta == cpx(2.0));
    CHECK(f.degQ == 5);
    CHECK(f.b_coeff(Rational(3), Rational(2)) == cpx(1.0));
}

namespace {
WeightPlan plan_of(const SkewProduct& f) {
    auto plans = classify(f.delta, newton_polygon(f.q));
    REQUIRE(plans.size() == 1);
    return plans.front();
}
}  // namespace

TEST_CASE("relative remainder on the worked points") {
    SkewProduct mono = SkewProduct::make(P("z^2"), P("z*w^2"));
    WeightPlan pm = plan_of(mono);
    auto zf = RemainderForm::for_p(mono);
    auto ef = RemainderForm::for_q(mono, pm.gamma, pm.d);
    LogPoint x = LogPoint::from_point(cpx(17.0, 3.0), cpx(5.0, -11.0));
    CHECK(zf.eval(x.Z, x.W) == cpx(0.0));
    CHECK(ef.eval(x.Z, x.W) == cpx(0.0));

    SkewProduct f1 = SkewProduct::make(P("z^3"), P("z^3*w^2 + z^5"));
    WeightPlan p1 = plan_of(f1);
    LogPoint x1 = LogPoint::from_point(cpx(10.0), cpx(100.0));
    CHECK(std::abs(RemainderForm::for_p(f1).eval(x1.Z, x1.W)) == 0.0);
    CHECK(std::abs(RemainderForm::for_q(f1, p1.gamma, p1.d).eval(x1.Z, x1.W) - cpx(0.01)) < 1e-15);

    SkewProduct f2 = SkewProduct::make(P("z^3 + z"), P("z^3*w^2"));
    WeightPlan p2 = plan_of(f2);
    CHECK(std::abs(RemainderForm::for_p(f2).eval(x1.Z, x1.W) - cpx(0.01)) < 1e-15);
    CHECK(std::abs(RemainderForm::for_q(f2, p2.gamma, p2.d).eval(x1.Z, x1.W)) == 0.0);
}

TEST_CASE("remainder agrees with the naive quotient to 10 digits on moderate points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logmod(std::log(10.0), std::log(1000.0));
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    SkewProduct f = SkewProduct::make(P("z^4 + (2+1i)*z^2 + 3"), P("z^3*w^2 + z^5 + 2*z*w + 7"));
    auto plans = classify(f.delta, newton_polygon(f.q));
    const WeightPlan& plan = plans.front();
    auto zf = RemainderForm::for_p(f);
    auto ef = RemainderForm::for_q(f, plan.gamma, plan.d);
    cpx b = f.b_coeff(plan.gamma, plan.d);
    for (int it = 0; it < 200; ++it) {
        cpx z = std::polar(std::exp(logmod(rng)), ph(rng));
        cpx w = std::polar(std::exp(logmod(rng)), ph(rng));
        LogPoint x = LogPoint::from_point(z, w);
        cpx zeta = zf.eval(x.Z, x.W);
        cpx eta = ef.eval(x.Z, x.W);
        cpx naive_zeta = evaluate(f.p, z, w) / (f.a_delta * std::pow(z, 4)) - 1.0;
        cpx naive_eta =
            evaluate(f.q, z, w) / (b * std::pow(z, 3) * std::pow(w, 2)) - 1.0;
        CHECK(std::abs(zeta - naive_zeta) <= 1e-10 * (1.0 + std::abs(naive_zeta)));
        CHECK(std::abs(eta - naive_eta) <= 1e-10 * (1.0 + std::abs(naive_eta)));
    }
}

TEST_CASE("remainder evaluation survives astronomically large moduli") {
    SkewProduct f = SkewProduct::make(P("z^3"), P("z^3*w^2 + z^5"));
    auto plans = classify(f.delta, newton_polygon(f.q));
    auto ef = RemainderForm::for_q(f, plans[0].gamma, plans[0].d);
    // |z| = exp(1e8), |w| = exp(2e8): the remainder term underflows to 0.
    cpx eta = ef.eval(cpx(1e8, 0.3), cpx(2e8, 1.1));
    CHECK(std::abs(eta) == 0.0);
    CHECK(std::isfinite(eta.real()));
}

TEST_CASE("polynomial grammar") {
    Poly q = parse_polynomial("(1+2i)*z^3*w^2 - 2*w + 3.5");
    CHECK(q.size() == 3);
    CHECK(q.coeff_at(Rational(3), Rational(2)) == cpx(1.0, 2.0));
    CHECK(q.coeff_at(Rational(0), Rational(1)) == cpx(-2.0));
    CHECK(q.coeff_at(Rational(0), Rational(0)) == cpx(3.5));

    CHECK(parse_polynomial("z w").coeff_at(Rational(1), Rational(1)) == cpx(1.0));
    CHECK(parse_polynomial("2z^2").coeff_at(Rational(2), Rational(0)) == cpx(2.0));
    CHECK(parse_polynomial("(2i)*w^2").coeff_at(Rational(0), Rational(2)) == cpx(0.0, 2.0));
    CHECK(parse_polynomial("(-1.5)*z").coeff_at(Rational(1), Rational(0)) == cpx(-1.5));
    CHECK(parse_polynomial("z^2 - z^2").empty());
}

TEST_CASE("parse errors carry position") {
    try {
        parse_polynomial("z^3 + $");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 1);
        CHECK(e.column >= 7);
    }
    CHECK_THROWS_AS(parse_polynomial("z^-2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("z^^2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial(""), parse_error);
    CHECK_THROWS_AS(parse_map("p = z^2"), parse_error);                  // q missing
    CHECK_THROWS_AS(parse_map("p = z^2; p = z^3; q = z*w^2"), parse_error);  // duplicate
}

TEST_CASE("map files parse with comments and separators") {
    SkewProduct f = parse_map("# worked instance\np = z^3\n; q = z^3*w^2 + z^5\n");
    CHECK(f.delta == 3);
    CHECK(f.degQ == 5);
}
