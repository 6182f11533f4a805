#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace skewfold {

// Exact rational on int64 with 128-bit intermediates. Classification and all
// Newton-polygon geometry run on these; floating point never enters a case
// decision.
class Rational {
  public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    long long as_integer() const {
        if (den_ != 1) throw std::domain_error("rational " + str() + " is not an integer");
        return num_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    template <class R> R to_real() const { return static_cast<R>(num_) / static_cast<R>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational inverse() const { return Rational(1) / *this; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static long long narrow(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
        return static_cast<long long>(v);
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// A rational or +infinity. Only the outer weight l2 is ever infinite.
class ExtendedRational {
  public:
    ExtendedRational() = default;
    ExtendedRational(const Rational& r) : finite_(true), value_(r) {}
    ExtendedRational(long long n) : finite_(true), value_(n) {}
    static ExtendedRational infinity() { return ExtendedRational(infinite_tag{}); }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }
    const Rational& value() const {
        if (!finite_) throw std::domain_error("value() on infinite ExtendedRational");
        return value_;
    }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtendedRational& a, const ExtendedRational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const ExtendedRational& b) {
        return b.is_infinite() || a < b.value();
    }
    friend bool operator<=(const Rational& a, const ExtendedRational& b) {
        return b.is_infinite() || a <= b.value();
    }

    std::string str() const { return finite_ ? value_.str() : "inf"; }

  private:
    struct infinite_tag {};
    explicit ExtendedRational(infinite_tag) : finite_(false) {}
    bool finite_ = true;
    Rational value_;
};

}  // namespace skewfold
