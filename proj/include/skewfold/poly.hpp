#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "skewfold/errors.hpp"
#include "skewfold/rational.hpp"

namespace skewfold {

using cpx = std::complex<double>;

// One monomial c * z^ez * w^ew. Exponents are exact rationals: user input is
// integer, but blow-ups and coverings produce fractional and negative powers.
struct Term {
    Rational ez;
    Rational ew;
    cpx coeff{0.0, 0.0};
};

// z^e with the principal branch for non-integer e. Integer exponents go
// through exact squaring so real inputs stay branch-noise free.
template <class R>
std::complex<R> principal_pow(std::complex<R> z, const Rational& e) {
    if (e.is_zero()) return std::complex<R>(1);
    if (e.is_integer()) {
        long long n = e.as_integer();
        if (z == std::complex<R>(0)) {
            if (n > 0) return std::complex<R>(0);
            throw branch_ambiguity_error("0 raised to a non-positive power");
        }
        bool neg = n < 0;
        unsigned long long m = neg ? -(unsigned long long)n : (unsigned long long)n;
        std::complex<R> acc(1), base = z;
        while (m) {
            if (m & 1ull) acc *= base;
            base *= base;
            m >>= 1;
        }
        return neg ? std::complex<R>(1) / acc : acc;
    }
    if (z.imag() == R(0) && z.real() <= R(0))
        throw branch_ambiguity_error("non-integer power on the branch cut ray");
    return std::exp(e.template to_real<R>() * std::log(z));
}

class Poly {
  public:
    Poly() = default;
    // Merges duplicate exponent pairs and drops zero coefficients.
    explicit Poly(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Max of ez + ew over monomials.
    Rational total_degree() const;
    Rational max_z_degree() const;
    Rational max_w_degree() const;

    // Sum of the monomials whose w-exponent equals d, divided by w^d; this is
    // the coefficient polynomial b(z) of w^d.
    Poly coefficient_of_w(const Rational& d) const;

    cpx coeff_at(const Rational& ez, const Rational& ew) const;

    Poly operator+(const Poly& other) const;
    Poly scaled(const cpx& c) const;

    template <class R>
    std::complex<R> evaluate(const std::complex<R>& z, const std::complex<R>& w) const {
        std::complex<R> acc(0);
        for (const auto& t : terms_)
            acc += std::complex<R>(t.coeff) * principal_pow(z, t.ez) * principal_pow(w, t.ew);
        return acc;
    }

    std::string str() const;

  private:
    std::vector<Term> terms_;  // sorted by (ez, ew)
};

cpx evaluate(const Poly& poly, cpx z, cpx w);

Poly derivative_z(const Poly& poly);
Poly derivative_w(const Poly& poly);

// A point in the exponential lift: (z, w) = (exp Z, exp W).
struct LogPoint {
    cpx Z{0.0, 0.0};
    cpx W{0.0, 0.0};

    static LogPoint from_point(cpx z, cpx w) {
        if (z == cpx(0.0) || w == cpx(0.0))
            throw hypothesis_error("cannot lift a point with a zero coordinate");
        return LogPoint{std::log(z), std::log(w)};
    }
    cpx z() const { return std::exp(Z); }
    cpx w() const { return std::exp(W); }
};

// f(z, w) = (p(z), q(z, w)) with deg p >= 2 and deg q >= 2.
struct SkewProduct {
    Poly p;
    Poly q;
    long long delta = 0;  // deg p
    cpx a_delta{0.0, 0.0};
    long long degQ = 0;  // total degree of q

    // Validates the standing assumptions: p univariate with integer exponents,
    // delta >= 2, deg q >= 2, and q genuinely depends on w.
    static SkewProduct make(Poly p, Poly q);

    cpx b_coeff(const Rational& gamma, const Rational& d) const { return q.coeff_at(gamma, d); }
};

// Relative remainder of a polynomial against a dominant monomial, kept as a
// list of exponent offsets so evaluation works entirely in log coordinates:
// each term is ratio * exp(dez*Z + dew*W), so nothing overflows until the
// term itself does.
struct RemainderForm {
    struct Offset {
        Rational dez;
        Rational dew;
        cpx ratio{0.0, 0.0};
    };
    std::vector<Offset> terms;

    // zeta-form for p against a_delta z^delta.
    static RemainderForm for_p(const SkewProduct& f);
    // eta-form for q against b_{gamma d} z^gamma w^d.
    static RemainderForm for_q(const SkewProduct& f, const Rational& gamma, const Rational& d);

    // Sum of ratio * exp(dez*Z + dew*W), largest terms first.
    template <class R>
    std::complex<R> eval(const std::complex<R>& Z, const std::complex<R>& W) const {
        if (terms.empty()) return std::complex<R>(0);
        std::vector<std::pair<R, std::complex<R>>> vals;
        vals.reserve(terms.size());
        for (const auto& t : terms) {
            std::complex<R> e = t.dez.template to_real<R>() * Z + t.dew.template to_real<R>() * W;
            if (e.real() > R(0.5) * std::log(std::numeric_limits<R>::max()))
                throw error("remainder term overflows: exponent real part " +
                            std::to_string((double)e.real()));
            vals.emplace_back(e.real(), coeff_as<R>(t.ratio) * std::exp(e));
        }
        std::sort(vals.begin(), vals.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::complex<R> acc(0);
        for (const auto& v : vals) acc += v.second;
        return acc;
    }

    template <class R>
    static std::complex<R> coeff_as(const cpx& c) {
        return std::complex<R>(static_cast<R>(c.real()), static_cast<R>(c.imag()));
    }
};

}  // namespace skewfold
