#include "skewfold/region.hpp"

#include <cmath>
#include <random>

#include "skewfold/parallel.hpp"

namespace skewfold {

double RegionSpec::log_R() const { return std::log(R); }

bool RegionSpec::member(cpx z, cpx w) const {
    if (w == cpx(0.0) || z == cpx(0.0)) return false;
    return member_log(std::log(std::abs(z)), std::log(std::abs(w)));
}

bool RegionSpec::member_log(double x, double y) const {
    const double rho = log_R();
    const double l1d = l1.to_double();
    if (case_tag <= 2) {
        if (!(x > rho)) return false;
        return y > rho + log_margin + l1d * x;
    }
    const double l2d = l2.value().to_double();
    if (!(y > rho + log_margin + l1d * x)) return false;
    return y < (l1d + l2d) * x - l2d * rho - log_margin;
}

RegionSpec RegionSpec::with_R(double R2) const {
    RegionSpec s = *this;
    s.R = R2;
    return s;
}

RegionSpec spec_for(const WeightPlan& plan, double R, double eps) {
    RegionSpec s;
    s.case_tag = plan.case_tag;
    s.R = R;
    s.eps = eps;
    s.l1 = plan.l1;
    s.l2 = plan.l2;
    return s;
}

namespace {

// Exponent gaps (g1, g2) of a remainder term in the case's product
// coordinates; both are >= 0 by the case lemmas and their sum is > 0.
std::pair<Rational, Rational> term_gaps(const WeightPlan& plan, const Rational& i,
                                        const Rational& j) {
    const Rational dl(plan.delta);
    switch (plan.case_tag) {
        case 1:
            return {plan.gamma - i, plan.d - j};
        case 2:
            return {(plan.gamma + plan.l1 * plan.d) - (i + plan.l1 * j), plan.d - j};
        case 3: {
            Rational il2 = plan.l2.value().inverse();
            return {plan.gamma - i, plan.tilde_d - (il2 * i + j)};
        }
        case 4: {
            Rational il2 = plan.l2.value().inverse();
            Rational ti = i + plan.l1 * j - plan.l1 * dl;
            return {plan.tilde_gamma - ti, plan.tilde_d - (il2 * ti + j)};
        }
    }
    throw error("internal: unknown case tag");
}

double union_bound_R(const std::vector<std::pair<double, Rational>>& terms, double eps) {
    // Each term obeys |term| <= c * R^{-g}; make N * c * R^{-g} <= eps per term.
    double R = 1.0;
    const double n = static_cast<double>(terms.size());
    for (const auto& [c, g] : terms) {
        double gd = g.to_double();
        if (gd <= 0.0) throw error("internal: non-positive exponent gap in estimate_R");
        R = std::max(R, std::pow(n * c / eps, 1.0 / gd));
    }
    return R;
}

// R large enough that K * R^{e-1} > 1; e > 1 is guaranteed by the degree gate.
double margin_R(double K, const Rational& e) {
    double ed = e.to_double();
    if (ed <= 1.0 + 1e-12)
        throw error("internal: invariance margin exponent <= 1 despite degree gate");
    if (K >= 1.0) return 1.0;
    return std::pow(1.0 / K, 1.0 / (ed - 1.0)) * (1.0 + 1e-9);
}

}  // namespace

RegionSpec estimate_R(const SkewProduct& f, const WeightPlan& plan, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw hypothesis_error("estimate_R requires 0 < eps < 1");
    if (!plan.degree_ok)
        throw hypothesis_error(
            "degree condition fails (d = 1 and delta = T_k for some k, or d = 0): "
            "the main proposition does not apply");

    double R = 2.0;

    // Remainder sup bounds, term by term.
    std::vector<std::pair<double, Rational>> zeta_terms;
    const double an = std::abs(f.a_delta);
    for (const auto& t : f.p.terms()) {
        if (t.ez == Rational(f.delta)) continue;
        zeta_terms.emplace_back(std::abs(t.coeff) / an, Rational(f.delta) - t.ez);
    }
    R = std::max(R, union_bound_R(zeta_terms, eps));

    std::vector<std::pair<double, Rational>> eta_terms;
    const double bn = std::abs(f.b_coeff(plan.gamma, plan.d));
    for (const auto& t : f.q.terms()) {
        if (t.ez == plan.gamma && t.ew == plan.d) continue;
        auto [g1, g2] = term_gaps(plan, t.ez, t.ew);
        if (g1 < Rational(0) || g2 < Rational(0))
            throw error("internal: negative exponent gap in estimate_R");
        eta_terms.emplace_back(std::abs(t.coeff) / bn, g1 + g2);
    }
    R = std::max(R, union_bound_R(eta_terms, eps));

    // Invariance margins: each image coordinate dominates K * R^e in the
    // product coordinates, and must exceed R.
    const double onem = 1.0 - eps;
    const double onep = 1.0 + eps;
    const Rational dl(plan.delta);
    switch (plan.case_tag) {
        case 1:
        case 2: {
            R = std::max(R, margin_R(an * onem, dl));
            double l1d = plan.l1.to_double();
            double K = bn * onem / (std::pow(an, l1d) * std::pow(onep, l1d));
            R = std::max(R, margin_R(K, plan.tilde_gamma + plan.d));
            break;
        }
        case 3: {
            Rational il2 = plan.l2.value().inverse();
            double il2d = il2.to_double();
            double K1 = an * onem / (std::pow(bn, il2d) * std::pow(onep, il2d));
            Rational e1 = (dl - il2 * plan.gamma) + il2 * (dl - plan.tilde_d);
            R = std::max(R, margin_R(K1, e1));
            R = std::max(R, margin_R(bn * onem, plan.gamma + plan.tilde_d));
            break;
        }
        case 4: {
            Rational il2 = plan.l2.value().inverse();
            double il2d = il2.to_double();
            double l1d = plan.l1.to_double();
            double K1 = std::pow(an * onem, 1.0 + l1d * il2d) /
                        (std::pow(bn, il2d) * std::pow(onep, il2d));
            Rational e1 = (dl - il2 * plan.tilde_gamma) + il2 * (dl - plan.tilde_d);
            R = std::max(R, margin_R(K1, e1));
            double K2 = bn * onem / (std::pow(an, l1d) * std::pow(onep, l1d));
            R = std::max(R, margin_R(K2, plan.tilde_gamma + plan.tilde_d));
            break;
        }
    }

    return spec_for(plan, R, eps);
}

std::vector<LogPoint> sample_region(const RegionSpec& spec, int n, std::uint64_t seed) {
    const double rho = spec.log_R();
    const double span = 20.0;
    const double l1d = spec.l1.to_double();
    const bool two_sided = spec.case_tag >= 3;
    const double l2d = two_sided ? spec.l2.value().to_double() : 0.0;

    double x_lo = rho;
    if (two_sided) x_lo = ((1.0 + l2d) * rho + 2.0 * spec.log_margin) / l2d;
    const double x_hi = std::max(rho + span, x_lo + 5.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(1e-12, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    std::vector<LogPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(out.size()) < n) {
        double x = x_lo + unit(rng) * (x_hi - x_lo);
        double y_lo = rho + spec.log_margin + l1d * x;
        double y_hi = y_lo + span;
        if (two_sided) y_hi = std::min(y_hi, (l1d + l2d) * x - l2d * rho - spec.log_margin);
        if (!(y_hi > y_lo)) continue;
        double y = y_lo + unit(rng) * (y_hi - y_lo);
        if (!spec.member_log(x, y)) continue;
        out.push_back(LogPoint{cpx(x, phase(rng)), cpx(y, phase(rng))});
    }
    return out;
}

VerifyReport verify_bounds(const SkewProduct& f, const WeightPlan& plan, const RegionSpec& spec,
                           double eps, int n_samples, std::uint64_t seed, int threads) {
    auto samples = sample_region(spec, n_samples, seed);
    RemainderForm zf = RemainderForm::for_p(f);
    RemainderForm ef = RemainderForm::for_q(f, plan.gamma, plan.d);

    std::vector<double> mz(samples.size()), me(samples.size());
    parallel_chunks(samples.size(), threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t i = b; i < e; ++i) {
            mz[i] = std::abs(zf.eval(samples[i].Z, samples[i].W));
            me[i] = std::abs(ef.eval(samples[i].Z, samples[i].W));
        }
    });

    VerifyReport rep;
    rep.R = spec.R;
    rep.eps = eps;
    rep.samples = n_samples;
    rep.seed = seed;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        rep.max_zeta = std::max(rep.max_zeta, mz[i]);
        rep.max_eta = std::max(rep.max_eta, me[i]);
    }
    rep.pass = rep.max_zeta < eps && rep.max_eta < eps;
    return rep;
}

VerifyReport verify_invariance(const SkewProduct& f, const WeightPlan& plan,
                               const RegionSpec& spec, int n_samples, std::uint64_t seed,
                               int threads) {
    auto samples = sample_region(spec, n_samples, seed);
    LiftedMap F = LiftedMap::make(f, plan);

    std::vector<char> bad(samples.size(), 0);
    parallel_chunks(samples.size(), threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t i = b; i < e; ++i) {
            bool lifted = false;
            try {
                auto [zeta, eta] = F.remainders(to_lift(samples[i]));
                if (std::abs(zeta) < 1.0 && std::abs(eta) < 1.0) {
                    auto y = F.step(to_lift(samples[i]), std::log(cpx(1.0) + zeta),
                                    std::log(cpx(1.0) + eta));
                    if (!spec.member_log(y.Z.real(), y.W.real())) bad[i] = 1;
                    lifted = true;
                }
            } catch (const error&) {
                // remainder overflow: the point is far outside the certified
                // regime; fall through to the downstairs check
            }
            if (!lifted) {
                cpx z = samples[i].z(), w = samples[i].w();
                cpx pz = f.p.evaluate<double>(z, w);
                cpx qw = f.q.evaluate<double>(z, w);
                if (!std::isfinite(std::abs(pz)) || !std::isfinite(std::abs(qw)) ||
                    !spec.member(pz, qw))
                    bad[i] = 1;
            }
        }
    });

    VerifyReport rep;
    rep.R = spec.R;
    rep.eps = spec.eps;
    rep.samples = n_samples;
    rep.seed = seed;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (bad[i]) rep.violations.emplace_back(samples[i].z(), samples[i].w());
    rep.pass = rep.violations.empty();
    return rep;
}

VerifyReport verify_contraction(const SkewProduct& f, const WeightPlan& plan,
                                const RegionSpec& spec, int n_steps, int n_samples,
                                std::uint64_t seed, int threads) {
    if (plan.d != Rational(1))
        throw hypothesis_error("verify_contraction applies to d = 1 only");
    if (!plan.degree_ok)
        throw hypothesis_error("degree condition fails: d = 1 and delta = T_k for some k");

    auto samples = sample_region(spec, n_samples, seed);
    LiftedMap F = LiftedMap::make(f, plan);
    const double log2 = std::log(2.0);

    std::vector<char> bad(samples.size(), 0);
    parallel_chunks(samples.size(), threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t i = b; i < e; ++i) {
            LiftPoint x = to_lift(samples[i]);
            for (int n = 1; n <= n_steps; ++n) {
                x = F.apply(x);
                RegionSpec grown = spec;
                grown.R = std::exp(spec.log_R() + n * log2);  // U_{2^n R}
                if (!grown.member_log(x.Z.real(), x.W.real())) {
                    bad[i] = 1;
                    break;
                }
            }
        }
    });

    VerifyReport rep;
    rep.R = spec.R;
    rep.eps = spec.eps;
    rep.samples = n_samples;
    rep.seed = seed;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (bad[i]) rep.violations.emplace_back(samples[i].z(), samples[i].w());
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace skewfold
