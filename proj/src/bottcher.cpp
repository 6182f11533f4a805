#include "skewfold/bottcher.hpp"

#include <cmath>

namespace skewfold {

long long gamma_n(long long delta, long long d, long long gamma, int n) {
    if (n < 0) throw hypothesis_error("gamma_n requires n >= 0");
    __int128 acc = 0;
    __int128 dpow = 1;  // d^j
    for (int j = 0; j < n; ++j) {
        acc = (__int128)delta * acc + dpow * gamma;
        dpow *= d;
        if (acc > (__int128)INT64_MAX || dpow > (__int128)INT64_MAX)
            throw std::overflow_error("gamma_n overflows 64 bits");
    }
    return static_cast<long long>(acc);
}

double TailModel::tail1(int n) const {
    if (eps_tilde == 0.0) return 0.0;
    return eps_tilde * std::pow((double)delta, -n) / (double)(delta - 1);
}

double TailModel::tail2(int n) const {
    if (eps_tilde == 0.0 && K_d1 == 0.0) return 0.0;
    if (d == 1) {
        double twoM = std::pow(2.0, -M);
        return K_d1 * std::pow(R, -M) * std::pow(twoM, n) / (1.0 - twoM);
    }
    double dd = (double)d, del = (double)delta;
    double head = std::pow(dd, -n) / (dd - 1.0);
    double gsum;
    if (delta != d) {
        gsum = (double)gamma / (del - dd) *
               (std::pow(dd, -n) / (dd - 1.0) - std::pow(del, -n) / (del - 1.0));
    } else {
        double x = 1.0 / del;
        gsum = (double)gamma * x * x * std::pow(x, n) * ((n + 1) - n * x) / ((1.0 - x) * (1.0 - x));
    }
    return eps_tilde * (head + gsum);
}

TailModel make_tail_model(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec) {
    TailModel tm;
    tm.delta = f.delta;
    tm.d = plan.d_int();
    tm.gamma = plan.gamma_int();
    tm.R = spec.R;
    tm.M = plan.M.to_double();

    RemainderForm zf = RemainderForm::for_p(f);
    RemainderForm ef = RemainderForm::for_q(f, plan.gamma, plan.d);
    const bool monomial = zf.terms.empty() && ef.terms.empty();
    const double eps = monomial ? 0.0 : spec.eps;
    tm.eps_tilde = eps > 0.0 ? -std::log1p(-eps) : 0.0;

    double C1 = 0.0, C2 = 0.0;
    for (const auto& t : zf.terms) C1 += std::abs(t.ratio);
    for (const auto& t : ef.terms) C2 += std::abs(t.ratio);
    const double inflate = eps > 0.0 ? tm.eps_tilde / eps : 1.0;
    tm.K_d1 = (C2 + (double)tm.gamma * C1 / (double)(tm.delta - 1)) * inflate;
    return tm;
}

namespace {

template <class R>
struct SeriesResult {
    std::complex<R> Phi1{0, 0};
    std::complex<R> Phi2{0, 0};
    int n_used = 0;
    double tail = 0.0;
    bool converged = false;
};

// Increment form of F0^{-n} o F^n: the affine constants of F0^{-n} cancel
// exactly against the orbit, leaving
//   Phi1 = Z + sum_j delta^{-(j+1)} Lz_j,
//   Phi2 = W + sum_j [ d^{-(j+1)} Le_j - gamma_{j+1}/(delta^{j+1} d^{j+1}) Lz_j ],
// with Lz, Le the log(1+remainder) values along the lift orbit. No large
// intermediates, so precision survives arbitrarily many steps.
template <class R>
SeriesResult<R> run_series(const LiftedMap& F, const TailModel& tails,
                           LiftedMap::Point<R> x, double tol, int max_iter, int fixed_n) {
    const R del = R(F.delta), dd = R(F.d), gam = R(F.gamma);
    SeriesResult<R> res;
    std::complex<R> acc1(0), acc2(0);
    const std::complex<R> Z0 = x.Z, W0 = x.W;
    R w1 = R(1) / del;
    R wd = R(1) / dd;
    R g = gam / (del * dd);
    R pd = R(1) / (del * del);

    int n = 0;
    double tail = tails.tail(0);
    bool converged = fixed_n < 0 && tail < tol;
    while (!converged) {
        if (fixed_n >= 0 ? n >= fixed_n : n >= max_iter) break;
        auto [zeta, eta] = F.remainders(x);
        if (std::abs(zeta) >= R(1) || std::abs(eta) >= R(1))
            throw hypothesis_error("orbit left the validity region: |zeta| or |eta| >= 1");
        std::complex<R> Lz = std::log(std::complex<R>(1) + zeta);
        std::complex<R> Le = std::log(std::complex<R>(1) + eta);
        acc1 += w1 * Lz;
        acc2 += wd * Le - g * Lz;
        x = F.step(x, Lz, Le);
        ++n;
        w1 /= del;
        wd /= dd;
        g = g / dd + gam * pd / dd;
        pd /= del;
        if (fixed_n < 0) {
            tail = tails.tail(n);
            if (tail < tol) converged = true;
        }
        if (std::abs(x.Z.real()) > R(1e200)) break;  // orbit saturated; tails are 0 here anyway
    }
    res.Phi1 = Z0 + acc1;
    res.Phi2 = W0 + acc2;
    res.n_used = n;
    res.tail = tails.tail(n);
    res.converged = fixed_n >= 0 || converged;
    return res;
}

struct Engine {
    LiftedMap F;
    TailModel tails;

    static Engine make(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec) {
        return Engine{LiftedMap::make(f, plan), make_tail_model(f, plan, spec)};
    }

    SeriesResult<double> run(const LiftPoint& x, double tol, int max_iter, int fixed_n = -1) const {
        return run_series<double>(F, tails, x, tol, max_iter, fixed_n);
    }
    SeriesResult<long double> run_ext(const LiftPoint& x, double tol, int max_iter) const {
        LiftedMap::Point<long double> xe{std::complex<long double>(x.Z),
                                         std::complex<long double>(x.W)};
        return run_series<long double>(F, tails, xe, tol, max_iter, -1);
    }
};

void require_degree(const WeightPlan& plan) {
    if (!plan.degree_ok)
        throw hypothesis_error(
            "Boettcher construction requires d >= 2, or d = 1 and delta != T_k for any k");
}

// Max per-coordinate relative conjugacy residual |phi_i(f x)/f0_i(phi x) - 1|,
// evaluated as exp of lift differences so nothing overflows.
template <class R>
double conjugacy_residual(const Engine& eng, const LiftedMap::Point<R>& PhiX,
                          const LiftedMap::Point<R>& PhiFX) {
    auto f0 = eng.F.apply_monomial(PhiX);
    double r1 = (double)std::abs(std::exp(PhiFX.Z - f0.Z) - std::complex<R>(1));
    double r2 = (double)std::abs(std::exp(PhiFX.W - f0.W) - std::complex<R>(1));
    return std::max(r1, r2);
}

}  // namespace

BottcherEval phi_n(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                   const LogPoint& x, int n) {
    require_degree(plan);
    if (!spec.member(x.z(), x.w())) throw hypothesis_error("phi_n: point outside U");
    Engine eng = Engine::make(f, plan, spec);
    auto r = eng.run(to_lift(x), 0.0, n, n);
    BottcherEval out;
    out.Phi1 = r.Phi1;
    out.Phi2 = r.Phi2;
    out.phi1 = std::exp(r.Phi1);
    out.phi2 = std::exp(r.Phi2);
    out.n_used = r.n_used;
    out.converged = true;
    return out;
}

BottcherEval phi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                 const LogPoint& x, double tol, int max_iter, bool extended,
                 bool with_residual) {
    require_degree(plan);
    if (!(tol > 0.0)) throw hypothesis_error("phi requires tol > 0");
    if (!spec.member(x.z(), x.w())) throw hypothesis_error("phi: point outside U");
    Engine eng = Engine::make(f, plan, spec);

    BottcherEval out;
    if (extended) {
        auto r = eng.run_ext(to_lift(x), tol, max_iter);
        out.Phi1 = cpx(r.Phi1);
        out.Phi2 = cpx(r.Phi2);
        out.n_used = r.n_used;
        out.tail_bound = r.tail;
        out.converged = r.converged;
        if (with_residual && r.converged) {
            LiftedMap::Point<long double> xe{std::complex<long double>(x.Z),
                                             std::complex<long double>(x.W)};
            auto rf = run_series<long double>(eng.F, eng.tails, eng.F.apply(xe), tol, max_iter, -1);
            out.residual = conjugacy_residual<long double>(
                eng, {r.Phi1, r.Phi2}, {rf.Phi1, rf.Phi2});
        }
    } else {
        auto r = eng.run(to_lift(x), tol, max_iter);
        out.Phi1 = r.Phi1;
        out.Phi2 = r.Phi2;
        out.n_used = r.n_used;
        out.tail_bound = r.tail;
        out.converged = r.converged;
        if (with_residual && r.converged) {
            auto rf = eng.run(eng.F.apply(to_lift(x)), tol, max_iter);
            out.residual = conjugacy_residual<double>(eng, {r.Phi1, r.Phi2}, {rf.Phi1, rf.Phi2});
        }
    }
    out.phi1 = std::exp(out.Phi1);
    out.phi2 = std::exp(out.Phi2);
    return out;
}

LogPoint psi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
             const LogPoint& y, double tol, int max_iter) {
    require_degree(plan);
    Engine eng = Engine::make(f, plan, spec);
    const double inner_tol = std::min(tol * 1e-2, 1e-13);

    auto G = [&](const LiftPoint& X) -> LiftPoint {
        auto r = eng.run(X, inner_tol, max_iter);
        return LiftPoint{r.Phi1 - y.Z, r.Phi2 - y.W};
    };
    auto norm = [](const LiftPoint& v) { return std::max(std::abs(v.Z), std::abs(v.W)); };

    LiftPoint X{y.Z, y.W};  // phi ~ id on U, so y is already close
    LiftPoint res = G(X);
    for (int it = 0; it < 50; ++it) {
        if (norm(res) < tol) return LogPoint{X.Z, X.W};
        const double h = 1e-7 * std::max(1.0, std::max(std::abs(X.Z), std::abs(X.W)));
        LiftPoint rz = G({X.Z + h, X.W});
        LiftPoint rw = G({X.Z, X.W + h});
        cpx j11 = (rz.Z - res.Z) / h, j12 = (rw.Z - res.Z) / h;
        cpx j21 = (rz.W - res.W) / h, j22 = (rw.W - res.W) / h;
        cpx det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-30)
            throw convergence_error("psi: singular Jacobian", std::exp(X.Z), std::exp(X.W));
        cpx dZ = -(j22 * res.Z - j12 * res.W) / det;
        cpx dW = -(-j21 * res.Z + j11 * res.W) / det;

        double lambda = 1.0;
        for (;;) {
            LiftPoint Xn{X.Z + lambda * dZ, X.W + lambda * dW};
            LiftPoint rn = G(Xn);
            if (norm(rn) < norm(res) || lambda < 1.0 / 1024.0) {
                X = Xn;
                res = rn;
                break;
            }
            lambda *= 0.5;  // damp on residual increase
        }
    }
    if (norm(res) < tol) return LogPoint{X.Z, X.W};
    throw convergence_error("psi: Newton did not reach tolerance", std::exp(X.Z), std::exp(X.W));
}

RegionSpec injectivity_region(const WeightPlan& plan, const RegionSpec& spec, double eps) {
    if (!(eps >= 0.0)) throw hypothesis_error("injectivity_region requires eps >= 0");
    Rational C = Rational(1) / plan.d;  // l2 term drops when l2 is infinite
    if (plan.l2.is_finite())
        C = rat_max(C, plan.l2.value() / Rational(2 * plan.delta));
    RegionSpec out = spec;
    out.log_margin = spec.log_margin + 2.0 * C.to_double() * std::log1p(eps);
    return out;
}

cpx log_chi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec, cpx z,
            double tol, int max_iter) {
    const long long d = plan.d_int();
    if (d < 2) throw hypothesis_error("chi requires d >= 2");
    if (!(std::abs(z) > spec.R)) throw hypothesis_error("chi requires |z| > R");

    LiftedMap F = LiftedMap::make(f, plan);
    // Remainder of the w^d coefficient b(z) against b_{gamma d} z^gamma.
    Poly b = f.q.coefficient_of_w(plan.d);
    RemainderForm bform;
    cpx blead = f.b_coeff(plan.gamma, plan.d);
    for (const auto& t : b.terms()) {
        if (t.ez == plan.gamma) continue;
        bform.terms.push_back({t.ez - plan.gamma, Rational(0), t.coeff / blead});
    }

    double Ct = 0.0;
    for (const auto& t : bform.terms) Ct += std::abs(t.ratio);
    const double mb = Ct / spec.R;
    if (mb >= 0.9) throw hypothesis_error("chi: R too small to certify the coefficient remainder");
    const double Lb = mb > 0.0 ? -std::log1p(-mb) : 0.0;

    TailModel tails = make_tail_model(f, plan, spec);
    const double del = (double)F.delta, dd = (double)d, gam = (double)F.gamma;
    auto tail_at = [&](int n) {
        // sum_{j>=n} wd_j = d^{-n}/(d-1); sum_{j>=n} g_j as in the Phi2 tail.
        double wsum = std::pow(dd, -n) / (dd - 1.0);
        double gsum;
        if (F.delta != F.d) {
            gsum = gam / (del - dd) *
                   (std::pow(dd, -n) / (dd - 1.0) - std::pow(del, -n) / (del - 1.0));
        } else {
            double xq = 1.0 / del;
            gsum = gam * xq * xq * std::pow(xq, n) * ((n + 1) - n * xq) / ((1.0 - xq) * (1.0 - xq));
        }
        return (std::abs(F.logB) + Lb) * wsum + (std::abs(F.logA) + tails.eps_tilde) * gsum;
    };

    std::complex<double> Z = std::log(z);
    cpx acc(0.0);
    double w1 = 1.0 / dd;
    double g = gam / (del * dd);
    double pd = 1.0 / (del * del);
    int n = 0;
    while (tail_at(n) >= tol) {
        if (n >= max_iter)
            throw convergence_error("chi did not converge", z, cpx(0.0));
        cpx zeta = F.zeta_form.eval(Z, cpx(0.0));
        cpx zeta_b = bform.eval(Z, cpx(0.0));
        if (std::abs(zeta) >= 1.0 || std::abs(zeta_b) >= 1.0)
            throw hypothesis_error("chi: remainder left the validity region");
        cpx Lz = std::log(cpx(1.0) + zeta);
        acc += w1 * (F.logB + std::log(cpx(1.0) + zeta_b)) - g * (F.logA + Lz);
        Z = (double)F.delta * Z + F.logA + Lz;
        ++n;
        w1 /= dd;
        g = g / dd + gam * pd / dd;
        pd /= del;
    }
    return acc;
}

cpx chi(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec, cpx z, double tol,
        int max_iter) {
    return std::exp(log_chi(f, plan, spec, z, tol, max_iter));
}

DerivedCoords derived_coordinates(const SkewProduct& f, const WeightPlan& plan,
                                  const RegionSpec& spec, const LogPoint& x, double tol,
                                  int max_iter) {
    require_degree(plan);
    Engine eng = Engine::make(f, plan, spec);
    auto at_x = eng.run(to_lift(x), tol, max_iter);
    auto Fx = eng.F.apply(to_lift(x));
    auto at_fx = eng.run(Fx, tol, max_iter);

    DerivedCoords out;
    const long long d = plan.d_int();

    if (d >= 2) {
        cpx lc_x = log_chi(f, plan, spec, x.z(), tol, max_iter);
        cpx lc_fx = log_chi(f, plan, spec, std::exp(Fx.Z), tol, max_iter);
        // log b(z) without leaving the lift.
        cpx zeta_b;
        {
            Poly b = f.q.coefficient_of_w(plan.d);
            RemainderForm bform;
            cpx bl = f.b_coeff(plan.gamma, plan.d);
            for (const auto& t : b.terms())
                if (t.ez != plan.gamma)
                    bform.terms.push_back({t.ez - plan.gamma, Rational(0), t.coeff / bl});
            zeta_b = bform.eval(x.Z, cpx(0.0));
        }
        cpx log_b = eng.F.logB + (double)plan.gamma_int() * x.Z + std::log(cpx(1.0) + zeta_b);
        cpx lhs = at_fx.Phi2 - lc_fx;                       // log phi~2(f x)
        cpx rhs = log_b + (double)d * (at_x.Phi2 - lc_x);   // log (b(z) phi~2(x)^d)
        out.has_tilde2 = true;
        out.phi_tilde2 = std::exp(at_x.Phi2 - lc_x);
        out.tilde2_residual = std::abs(std::exp(lhs - rhs) - cpx(1.0));
    } else {
        out.tilde2_reason = "requires d >= 2";
    }

    if (!plan.alpha0) {
        out.alpha0_reason = "alpha0 undefined: delta == d";
    } else if (!plan.alpha0->is_integer()) {
        out.alpha0_reason = "alpha0 = " + plan.alpha0->str() + " is not an integer";
    } else {
        double a0 = plan.alpha0->to_double();
        cpx log_c = eng.F.logB - a0 * eng.F.logA;  // coefficient of the diagonal model
        cpx lhs = at_fx.Phi2 - a0 * at_fx.Phi1;
        cpx rhs = log_c + (double)d * (at_x.Phi2 - a0 * at_x.Phi1);
        double r2 = std::abs(std::exp(lhs - rhs) - cpx(1.0));
        double r1 = std::abs(std::exp(at_fx.Phi1 - (eng.F.logA + (double)f.delta * at_x.Phi1)) -
                             cpx(1.0));
        out.has_alpha0 = true;
        out.phi_alpha0 = std::exp(at_x.Phi2 - a0 * at_x.Phi1);
        out.alpha0_residual = std::max(r1, r2);
    }
    return out;
}

}  // namespace skewfold
