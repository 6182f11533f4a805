#include "skewfold/poly.hpp"

#include <map>
#include <sstream>

namespace skewfold {

namespace {
bool term_order(const Term& a, const Term& b) {
    if (a.ez != b.ez) return a.ez < b.ez;
    return a.ew < b.ew;
}
}  // namespace

Poly::Poly(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_order);
    for (const auto& t : terms) {
        if (!terms_.empty() && terms_.back().ez == t.ez && terms_.back().ew == t.ew)
            terms_.back().coeff += t.coeff;
        else
            terms_.push_back(t);
    }
    std::erase_if(terms_, [](const Term& t) { return t.coeff == cpx(0.0); });
}

Rational Poly::total_degree() const {
    if (terms_.empty()) throw error("total_degree of the zero polynomial");
    Rational best = terms_.front().ez + terms_.front().ew;
    for (const auto& t : terms_) best = rat_max(best, t.ez + t.ew);
    return best;
}

Rational Poly::max_z_degree() const {
    if (terms_.empty()) throw error("degree of the zero polynomial");
    Rational best = terms_.front().ez;
    for (const auto& t : terms_) best = rat_max(best, t.ez);
    return best;
}

Rational Poly::max_w_degree() const {
    if (terms_.empty()) throw error("degree of the zero polynomial");
    Rational best = terms_.front().ew;
    for (const auto& t : terms_) best = rat_max(best, t.ew);
    return best;
}

Poly Poly::coefficient_of_w(const Rational& d) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.ew == d) out.push_back(Term{t.ez, Rational(0), t.coeff});
    return Poly(out);
}

cpx Poly::coeff_at(const Rational& ez, const Rational& ew) const {
    for (const auto& t : terms_)
        if (t.ez == ez && t.ew == ew) return t.coeff;
    return cpx(0.0);
}

Poly Poly::operator+(const Poly& other) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return Poly(all);
}

Poly Poly::scaled(const cpx& c) const {
    std::vector<Term> all = terms_;
    for (auto& t : all) t.coeff *= c;
    return Poly(all);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.real();
        if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i";
        os << ")";
        if (!t.ez.is_zero()) os << "*z^" << t.ez.str();
        if (!t.ew.is_zero()) os << "*w^" << t.ew.str();
    }
    return os.str();
}

cpx evaluate(const Poly& poly, cpx z, cpx w) { return poly.evaluate<double>(z, w); }

Poly derivative_z(const Poly& poly) {
    std::vector<Term> out;
    for (const auto& t : poly.terms())
        if (!t.ez.is_zero())
            out.push_back(Term{t.ez - Rational(1), t.ew, t.coeff * t.ez.to_double()});
    return Poly(out);
}

Poly derivative_w(const Poly& poly) {
    std::vector<Term> out;
    for (const auto& t : poly.terms())
        if (!t.ew.is_zero())
            out.push_back(Term{t.ez, t.ew - Rational(1), t.coeff * t.ew.to_double()});
    return Poly(out);
}

SkewProduct SkewProduct::make(Poly p, Poly q) {
    if (p.empty() || q.empty()) throw hypothesis_error("p and q must be nonzero polynomials");
    for (const auto& t : p.terms()) {
        if (!t.ew.is_zero()) throw hypothesis_error("p must be univariate in z");
        if (!t.ez.is_integer() || t.ez < Rational(0))
            throw hypothesis_error("p must have non-negative integer exponents");
    }
    for (const auto& t : q.terms())
        if (!t.ez.is_integer() || !t.ew.is_integer() || t.ez < Rational(0) || t.ew < Rational(0))
            throw hypothesis_error("q must have non-negative integer exponents");

    SkewProduct f;
    f.delta = p.max_z_degree().as_integer();
    if (f.delta < 2) throw hypothesis_error("deg p = " + std::to_string(f.delta) + " < 2");
    f.degQ = q.total_degree().as_integer();
    if (f.degQ < 2) throw hypothesis_error("deg q = " + std::to_string(f.degQ) + " < 2");

    bool has_w = false;
    for (const auto& t : q.terms())
        if (t.ew >= Rational(1)) has_w = true;
    if (!has_w) throw hypothesis_error("q does not depend on w: second coordinate degenerate");

    f.a_delta = p.coeff_at(Rational(f.delta), Rational(0));
    f.p = std::move(p);
    f.q = std::move(q);
    return f;
}

RemainderForm RemainderForm::for_p(const SkewProduct& f) {
    RemainderForm form;
    for (const auto& t : f.p.terms()) {
        if (t.ez == Rational(f.delta)) continue;
        form.terms.push_back(Offset{t.ez - Rational(f.delta), Rational(0), t.coeff / f.a_delta});
    }
    return form;
}

RemainderForm RemainderForm::for_q(const SkewProduct& f, const Rational& gamma, const Rational& d) {
    cpx b = f.b_coeff(gamma, d);
    if (b == cpx(0.0)) throw hypothesis_error("dominant coefficient b_{gamma d} vanishes");
    RemainderForm form;
    for (const auto& t : f.q.terms()) {
        if (t.ez == gamma && t.ew == d) continue;
        form.terms.push_back(Offset{t.ez - gamma, t.ew - d, t.coeff / b});
    }
    return form;
}

}  // namespace skewfold
