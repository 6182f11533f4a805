#include "skewfold/infinity.hpp"

#include <cmath>
#include <random>

#include "skewfold/bottcher.hpp"

namespace skewfold {

const char* trichotomy_name(Trichotomy t) {
    switch (t) {
        case Trichotomy::collapse_to_p_plus: return "collapse_to_p_plus";
        case Trichotomy::induced_by_h: return "induced_by_h";
        case Trichotomy::collapse_to_p_minus: return "collapse_to_p_minus";
    }
    return "?";
}

const char* point_status_name(PointStatus s) {
    switch (s) {
        case PointStatus::superattracting: return "superattracting";
        case PointStatus::indeterminacy: return "indeterminacy";
        case PointStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

const char* basin_name(Basin b) {
    switch (b) {
        case Basin::A_plus: return "A_plus";
        case Basin::A_minus: return "A_minus";
        case Basin::closure_union: return "closure_union";
        case Basin::not_covered: return "not_covered";
    }
    return "?";
}

namespace {

struct TableInput {
    Rational D_l;       // degree in the weighted sense (D for l = 1)
    Rational lambda_l;
    std::vector<Term> h;
    ExponentPair NM;
    ExponentPair NstarMstar;
    Trichotomy trichotomy = Trichotomy::induced_by_h;
    PointStatus p_plus = PointStatus::indeterminacy;
    PointStatus p_minus = PointStatus::not_applicable;
    Basin basin = Basin::not_covered;
};

// Shared table logic of the projective and weighted-projective cases: the
// weighted tables replace D by D_l and compare l against alpha0 or l1, which
// is exactly the delta-vs-D_l trichotomy below.
TableInput classify_table(const SkewProduct& f, const WeightPlan& plan, const Rational& l) {
    TableInput out;
    const Rational dl(f.delta);

    // D_l = max(i/l + j); h collects the achieving terms.
    std::optional<Rational> best;
    for (const auto& t : f.q.terms()) {
        Rational v = t.ez / l + t.ew;
        if (!best || v > *best) best = v;
    }
    out.D_l = *best;
    out.lambda_l = rat_max(dl, out.D_l);
    for (const auto& t : f.q.terms())
        if (t.ez / l + t.ew == out.D_l) out.h.push_back(t);
    out.NM = {out.h.front().ez, out.h.front().ew};
    out.NstarMstar = {out.h.back().ez, out.h.back().ew};
    for (const auto& t : out.h) {
        if (t.ez < out.NM.first) out.NM = {t.ez, t.ew};
        if (t.ez > out.NstarMstar.first) out.NstarMstar = {t.ez, t.ew};
    }

    if (dl < out.D_l) out.trichotomy = Trichotomy::collapse_to_p_plus;
    else if (dl == out.D_l) out.trichotomy = Trichotomy::induced_by_h;
    else out.trichotomy = Trichotomy::collapse_to_p_minus;

    // p+ : indeterminacy point of the extension unless the lowest z-degree of
    // h vanishes; for delta > D_l the indeterminacy set is exactly {p+}.
    if (out.trichotomy == Trichotomy::collapse_to_p_minus)
        out.p_plus = PointStatus::indeterminacy;
    else
        out.p_plus = out.NM.first.is_zero() ? PointStatus::superattracting
                                            : PointStatus::indeterminacy;

    // p- : fixed iff h(1,0) = 0, i.e. z^{D} does not occur in h.
    const bool h_misses_zD = !out.NstarMstar.second.is_zero();
    switch (out.trichotomy) {
        case Trichotomy::collapse_to_p_minus:
            out.p_minus = PointStatus::superattracting;
            break;
        case Trichotomy::induced_by_h:
            out.p_minus = h_misses_zD ? PointStatus::superattracting : PointStatus::not_applicable;
            break;
        case Trichotomy::collapse_to_p_plus:
            out.p_minus = h_misses_zD ? PointStatus::indeterminacy : PointStatus::not_applicable;
            break;
    }

    // Basin of U.
    if (dl < out.D_l) {
        out.basin = Basin::A_plus;
    } else if (dl > out.D_l) {
        out.basin = Basin::A_minus;
    } else if (plan.d < Rational(2)) {
        out.basin = Basin::not_covered;  // the tables assume d >= 2 on this row
    } else {
        bool on_T = std::any_of(plan.polygon.intercepts.begin(), plan.polygon.intercepts.end(),
                                [&](const Rational& T) { return T == dl; });
        if (!on_T) {
            out.basin = Basin::closure_union;  // h = z^gamma w^d
        } else if (plan.gamma > Rational(0)) {
            ExponentPair dom{plan.gamma, plan.d};
            if (dom == out.NM) out.basin = Basin::A_plus;
            else if (dom == out.NstarMstar) out.basin = Basin::A_minus;
            else out.basin = Basin::not_covered;
        } else {
            // delta = d, gamma = 0 (Case 2): rows by l1 vs l.
            if (plan.l1 == l) out.basin = Basin::A_plus;
            else if (plan.l1 < l) out.basin = Basin::closure_union;
            else out.basin = Basin::not_covered;  // l1 > l forces delta < D_l; unreachable
        }
    }
    return out;
}

}  // namespace

InfinityReport classify_infinity(const SkewProduct& f, const WeightPlan& plan) {
    TableInput t = classify_table(f, plan, Rational(1));
    InfinityReport rep;
    rep.D = t.D_l.as_integer();
    rep.lambda = t.lambda_l.as_integer();
    rep.h = t.h;
    rep.NM = t.NM;
    rep.NstarMstar = t.NstarMstar;
    rep.trichotomy = t.trichotomy;
    rep.p_plus = t.p_plus;
    rep.p_minus = t.p_minus;
    rep.basin = t.basin;

    if (rep.D != f.degQ) throw error("internal: degree mismatch in classify_infinity");
    // Geometric cross-check: lambda equals the maximal slope -1 intercept over
    // {(0, delta)} and the polygon vertices.
    Rational geo(f.delta);
    for (const auto& [n, m] : plan.polygon.vertices) geo = rat_max(geo, n + m);
    if (geo != Rational(rep.lambda)) throw error("internal: lambda cross-check failed");
    return rep;
}

WeightedInfinityReport classify_weighted(const SkewProduct& f, const WeightPlan& plan,
                                         long long r, long long s) {
    if (r < 1 || s < 1 || std::gcd(r, s) != 1)
        throw hypothesis_error("weights (r, s) must be coprime positive integers");
    Rational l(s, r);
    TableInput t = classify_table(f, plan, l);
    WeightedInfinityReport rep;
    rep.r = r;
    rep.s = s;
    rep.l = l;
    rep.D_l = t.D_l;
    rep.lambda_l = t.lambda_l;
    rep.integral = t.lambda_l.is_integer();
    rep.conditional = !rep.integral;
    rep.h = t.h;
    rep.NM = t.NM;
    rep.NstarMstar = t.NstarMstar;
    rep.trichotomy = t.trichotomy;
    rep.p_plus = t.p_plus;
    rep.p_minus = t.p_minus;
    rep.basin = t.basin;
    return rep;
}

bool AfoRegion::member_log(double x, double y) const {
    switch (form) {
        case Form::z_gt1_w_ne0: return x > 0.0;
        case Form::z_gt1_w_gt1: return x > 0.0 && y > 0.0;
        case Form::z_gt1_w_above: return x > 0.0 && y > exponent->to_double() * x;
        case Form::z_gt1_w_below_ne0: return x > 0.0 && y < exponent->to_double() * x;
        case Form::not_covered: break;
    }
    throw hypothesis_error("membership query on a not-covered A_{f0} configuration");
}

AfoRegion afo_region(const WeightPlan& plan) {
    AfoRegion A;
    const Rational dl(plan.delta);
    const bool gamma_pos = plan.gamma > Rational(0);
    const bool d_ge2 = plan.d >= Rational(2);
    auto covered = [&](AfoRegion::Form form, int item, std::optional<Rational> e,
                       const std::string& desc) {
        A.form = form;
        A.item = item;
        A.exponent = e;
        A.description = desc;
    };

    switch (plan.case_tag) {
        case 1:
            if (gamma_pos && plan.d <= dl)
                covered(AfoRegion::Form::z_gt1_w_ne0, 1, std::nullopt, "{ |z| > 1, w != 0 }");
            else if (gamma_pos)  // delta < d, alpha0 < 0
                covered(AfoRegion::Form::z_gt1_w_above, 2, plan.alpha0,
                        "{ |z| > 1, |z^{-alpha0} w| > 1 }");
            else
                covered(AfoRegion::Form::z_gt1_w_gt1, 3, std::nullopt, "{ |z| > 1, |w| > 1 }");
            break;
        case 2: {
            const Rational T1 = plan.polygon.intercepts.front();
            if (gamma_pos && plan.d <= dl && dl < T1)
                covered(AfoRegion::Form::z_gt1_w_ne0, 1, std::nullopt, "{ |z| > 1, w != 0 }");
            else if (gamma_pos && plan.d < dl && dl == T1 && d_ge2)
                covered(AfoRegion::Form::z_gt1_w_above, 2, plan.alpha0,
                        "{ |z| > 1, |w| > |z|^{alpha0} }");
            else if (gamma_pos && dl < plan.d)
                covered(AfoRegion::Form::z_gt1_w_above, 3, plan.alpha0,
                        "{ |z| > 1, |z^{-alpha0} w| > 1 }");
            else if (!gamma_pos && dl < plan.d)
                covered(AfoRegion::Form::z_gt1_w_gt1, 4, std::nullopt, "{ |z| > 1, |w| > 1 }");
            else if (!gamma_pos && Rational(plan.delta) == plan.d)
                covered(AfoRegion::Form::z_gt1_w_above, 5, plan.l1,
                        "{ |z| > 1, |w| > |z|^{l1} }");
            break;
        }
        case 3: {
            const Rational Tlast = plan.polygon.intercepts.back();
            if (dl > Tlast)
                // The printed item reads |z| < 1; direct computation of the
                // preimages forces |z| > R^{1/delta^n} > 1, so the implemented
                // region is { |z| > 1, w != 0 } (suspected typo, oracle-checked).
                covered(AfoRegion::Form::z_gt1_w_ne0, 1, std::nullopt, "{ |z| > 1, w != 0 }");
            else if (dl == Tlast && d_ge2)
                covered(AfoRegion::Form::z_gt1_w_below_ne0, 2, plan.alpha0,
                        "{ |z| > 1, 0 < |w| < |z|^{alpha0} }");
            break;
        }
        case 4: {
            const Rational Tkm1 = plan.polygon.intercepts[static_cast<std::size_t>(plan.k - 2)];
            const Rational Tk = plan.polygon.intercepts[static_cast<std::size_t>(plan.k - 1)];
            if (Tkm1 < dl && dl < Tk)
                covered(AfoRegion::Form::z_gt1_w_ne0, 1, std::nullopt, "{ |z| > 1, w != 0 }");
            else if (dl == Tk && d_ge2)
                covered(AfoRegion::Form::z_gt1_w_above, 2, plan.alpha0,
                        "{ |z| > 1, |w| > |z|^{alpha0} }");
            else if (dl == Tkm1 && d_ge2)
                covered(AfoRegion::Form::z_gt1_w_below_ne0, 3, plan.alpha0,
                        "{ |z| > 1, 0 < |w| < |z|^{alpha0} }");
            break;
        }
    }
    if (A.form == AfoRegion::Form::not_covered)
        A.description = "not covered by the printed catalog";
    return A;
}

Rational T_iterate(const WeightPlan& plan, const Rational& l, int n) {
    if (n < 0) throw hypothesis_error("T_iterate requires n >= 0");
    if (plan.d < Rational(1)) throw hypothesis_error("T undefined for d < 1");
    Rational v = l;
    for (int i = 0; i < n; ++i) v = (Rational(plan.delta) * v - plan.gamma) / plan.d;
    return v;
}

PreimageRegion preimage_region(const WeightPlan& plan, int n) {
    if (n < 0) throw hypothesis_error("preimage_region requires n >= 0");
    PreimageRegion P;
    P.case_tag = plan.case_tag;
    P.n = n;
    Rational dpow(1), deltapow(1);
    for (int i = 0; i < n; ++i) {
        dpow *= plan.d;
        deltapow *= Rational(plan.delta);
    }
    P.z_exp = deltapow.inverse();
    P.w_exp = dpow.inverse();
    P.T_lo = T_iterate(plan, plan.l1, n);
    if (plan.case_tag >= 3) {
        P.has_upper = true;
        Rational l2 = plan.l2.value();
        P.up_exp = -l2 / dpow;
        P.T_up = T_iterate(plan, plan.l1 + l2, n);
    }
    return P;
}

bool PreimageRegion::member_log(double x, double y, double logR) const {
    if (case_tag <= 2 && !(x > z_exp.to_double() * logR)) return false;
    if (!(y > w_exp.to_double() * logR + T_lo.to_double() * x)) return false;
    if (has_upper && !(y < up_exp.to_double() * logR + T_up.to_double() * x)) return false;
    return true;
}

void VRegion::validate(const WeightPlan& plan, const RegionSpec& spec) const {
    if (family != 1 && family != 2) throw hypothesis_error("V family must be 1 or 2");
    const double l1 = plan.l1.to_double();
    if (!(r1 >= 1.0 && r2 >= 1.0 && r2 <= spec.R))
        throw hypothesis_error("V parameters outside the printed ranges: need 1 <= r1, 1 <= r2 <= R");
    if (family == 1) {
        if (!(r1 <= spec.R)) throw hypothesis_error("V family 1 requires r1 <= R");
    } else {
        if (plan.l2.is_infinite())
            throw hypothesis_error("V family 2 requires a finite l2 (Cases 3 and 4)");
        double l2 = plan.l2.value().to_double();
        if (!(r1 <= std::pow(spec.R, l2 / (l1 + l2))))
            throw hypothesis_error("V family 2 requires r1 <= R^{l2/(l1+l2)}");
    }
    if (!(a1 <= l1)) throw hypothesis_error("V requires a1 <= l1");
    if (std::isfinite(a2)) {
        if (plan.l2.is_finite() && !(a2 >= l1 + plan.l2.value().to_double()))
            throw hypothesis_error("V requires a2 >= l1 + l2");
    }
}

bool VRegion::member_log(double x, double y, const WeightPlan& plan) const {
    const bool lower_ok = !std::isfinite(a1) ? true : y > std::log(r2) + a1 * x;
    if (family == 1) {
        if (plan.case_tag <= 2) return x > std::log(r1) && lower_ok;
        double l2 = plan.l2.value().to_double();
        if (!lower_ok) return false;
        if (!std::isfinite(a2)) return true;
        return y < -l2 * std::log(r1) + a2 * x;
    }
    if (!lower_ok) return false;
    if (!std::isfinite(a2)) return true;
    return y < -a2 * std::log(r1) + a2 * x;
}

CriticalReport critical_precondition(const SkewProduct& f, const WeightPlan& plan,
                                     const RegionSpec& spec, const VRegion& V, int n_samples,
                                     std::uint64_t seed, int max_lift, double warn_threshold) {
    V.validate(plan, spec);
    Poly crit_p = derivative_z(f.p);
    Poly crit_qw = derivative_w(f.q);
    LiftedMap F = LiftedMap::make(f, plan);
    TailModel tails = make_tail_model(f, plan, spec);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    // Candidate moduli around V's vertex scale; the orbit test decides which
    // candidates actually belong to |phi|^{-1}(V).
    const double x_lo = std::log(V.r1) - 2.0, x_span = 10.0;
    const double y_base = std::log(V.r2) - 2.0, y_span = 10.0;

    CriticalReport rep;
    rep.min_modulus = std::numeric_limits<double>::infinity();
    for (int si = 0; si < n_samples; ++si) {
        double x = x_lo + unit(rng) * x_span;
        double slope = std::isfinite(V.a1) ? V.a1 : plan.l1.to_double();
        double y = y_base + slope * x + unit(rng) * y_span;
        LiftPoint X{cpx(x, phase(rng)), cpx(y, phase(rng))};
        cpx z0 = std::exp(X.Z), w0 = std::exp(X.W);

        // Push into U. Outside U the lift step is not valid (the remainders
        // can be huge), so iterate downstairs until the orbit certifies into
        // the region, then continue in the lift.
        int n = 0;
        cpx zc = z0, wc = w0;
        bool in_U = spec.member(zc, wc);
        bool dead = false;
        while (!in_U && n < max_lift) {
            cpx zn = f.p.evaluate<double>(zc, wc);
            cpx wn = f.q.evaluate<double>(zc, wc);
            if (!std::isfinite(std::abs(zn)) || !std::isfinite(std::abs(wn)) || zn == cpx(0.0) ||
                wn == cpx(0.0)) {
                dead = true;
                break;
            }
            zc = zn;
            wc = wn;
            ++n;
            in_U = spec.member(zc, wc);
        }
        if (dead || !in_U) {
            ++rep.excluded;
            continue;
        }
        LiftPoint cur{std::log(zc), std::log(wc)};
        // Phi at the U-point, then F0^{-n}: the modulus extension of |phi|.
        LiftPoint PhiU;
        {
            const double del = (double)F.delta, dd = (double)F.d, gam = (double)F.gamma;
            cpx acc1(0.0), acc2(0.0);
            LiftPoint xx = cur;
            double w1 = 1.0 / del, wd = 1.0 / dd, g = gam / (del * dd), pd = 1.0 / (del * del);
            int it = 0;
            while (tails.tail(it) >= 1e-10 && it < 200) {
                auto [zeta, eta] = F.remainders(xx);
                if (std::abs(zeta) >= 1.0 || std::abs(eta) >= 1.0) { dead = true; break; }
                cpx Lz = std::log(cpx(1.0) + zeta), Le = std::log(cpx(1.0) + eta);
                acc1 += w1 * Lz;
                acc2 += wd * Le - g * Lz;
                xx = F.step(xx, Lz, Le);
                ++it;
                w1 /= del; wd /= dd; g = g / dd + gam * pd / dd; pd /= del;
            }
            PhiU = LiftPoint{cur.Z + acc1, cur.W + acc2};
        }
        if (dead) {
            ++rep.excluded;
            continue;
        }
        for (int back = 0; back < n; ++back) PhiU = F.invert_monomial(PhiU);

        if (!V.member_log(PhiU.Z.real(), PhiU.W.real(), plan)) continue;
        ++rep.accepted;
        double m = std::abs(crit_p.evaluate<double>(z0, w0)) *
                   std::abs(crit_qw.evaluate<double>(z0, w0));
        if (m < rep.min_modulus) {
            rep.min_modulus = m;
            rep.argmin_z = z0;
            rep.argmin_w = w0;
        }
    }
    if (rep.accepted == 0) rep.min_modulus = 0.0;
    rep.pass = rep.accepted > 0 && rep.min_modulus > 1e-12;
    rep.warning = rep.min_modulus < warn_threshold;
    return rep;
}

}  // namespace skewfold
