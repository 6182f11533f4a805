#pragma once

#include "skewfold/classify.hpp"
#include "skewfold/poly.hpp"

namespace skewfold {

// f conjugated by the exponential product: F(Z, W) lifts f(e^Z, e^W).
// F0 is affine, (delta Z + log a_delta, gamma Z + d W + log b_{gamma d}),
// and F = F0 + (log(1+zeta), log(1+eta)). The principal branch of log is
// fixed once here, which pins the branch f0^{-n} o f0^n = id of the
// coordinate construction.
struct LiftedMap {
    long long delta = 0;
    long long gamma = 0;
    long long d = 0;
    cpx logA{0.0, 0.0};
    cpx logB{0.0, 0.0};
    RemainderForm zeta_form;
    RemainderForm eta_form;

    static LiftedMap make(const SkewProduct& f, const WeightPlan& plan) {
        LiftedMap F;
        F.delta = f.delta;
        F.gamma = plan.gamma_int();
        F.d = plan.d_int();
        F.logA = std::log(f.a_delta);
        F.logB = std::log(f.b_coeff(plan.gamma, plan.d));
        F.zeta_form = RemainderForm::for_p(f);
        F.eta_form = RemainderForm::for_q(f, plan.gamma, plan.d);
        return F;
    }

    template <class R>
    struct Point {
        std::complex<R> Z{0, 0};
        std::complex<R> W{0, 0};
    };

    template <class R>
    std::pair<std::complex<R>, std::complex<R>> remainders(const Point<R>& x) const {
        return {zeta_form.eval(x.Z, x.W), eta_form.eval(x.Z, x.W)};
    }

    // F; valid whenever |zeta|, |eta| < 1 at the point.
    template <class R>
    Point<R> apply(const Point<R>& x) const {
        auto [zeta, eta] = remainders(x);
        if (std::abs(zeta) >= R(1) || std::abs(eta) >= R(1))
            throw hypothesis_error("lift step outside the validity region: |zeta| or |eta| >= 1");
        return step(x, std::log(std::complex<R>(1) + zeta), std::log(std::complex<R>(1) + eta));
    }

    template <class R>
    Point<R> step(const Point<R>& x, const std::complex<R>& log1z,
                  const std::complex<R>& log1e) const {
        Point<R> y;
        y.Z = R(delta) * x.Z + std::complex<R>(logA) + log1z;
        y.W = R(gamma) * x.Z + R(d) * x.W + std::complex<R>(logB) + log1e;
        return y;
    }

    template <class R>
    Point<R> apply_monomial(const Point<R>& x) const {
        return step(x, std::complex<R>(0), std::complex<R>(0));
    }

    template <class R>
    Point<R> invert_monomial(const Point<R>& y) const {
        if (d < 1) throw hypothesis_error("monomial model not invertible: d < 1");
        Point<R> x;
        x.Z = (y.Z - std::complex<R>(logA)) / R(delta);
        x.W = (y.W - std::complex<R>(logB) - R(gamma) * x.Z) / R(d);
        return x;
    }
};

using LiftPoint = LiftedMap::Point<double>;

inline LiftPoint to_lift(const LogPoint& x) { return LiftPoint{x.Z, x.W}; }

// zeta = p/(a_delta z^delta) - 1 and eta = q/(b_{gamma d} z^gamma w^d) - 1 at
// the lifted point, summed term-wise so nothing overflows for moduli up to
// exp(1e8).
inline std::pair<cpx, cpx> relative_remainder(const SkewProduct& f, const WeightPlan& plan,
                                              const LogPoint& x) {
    RemainderForm zf = RemainderForm::for_p(f);
    RemainderForm ef = RemainderForm::for_q(f, plan.gamma, plan.d);
    return {zf.eval(x.Z, x.W), ef.eval(x.Z, x.W)};
}

}  // namespace skewfold
