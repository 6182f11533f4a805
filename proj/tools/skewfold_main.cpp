#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewfold/bottcher.hpp"
#include "skewfold/classify.hpp"
#include "skewfold/parallel.hpp"
#include "skewfold/infinity.hpp"
#include "skewfold/parser.hpp"
#include "skewfold/region.hpp"
#include "skewfold/report.hpp"
#include "skewfold/transforms.hpp"

using namespace skewfold;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_HYPOTHESIS = 2;
constexpr int EXIT_NONCONVERGED = 3;
constexpr int EXIT_PARSE = 4;

struct RunConfig {
    double eps = 0.01;
    std::optional<double> R;
    double tol = 1e-10;
    int max_iter = 200;
    int samples = 10000;
    std::uint64_t seed = 12345;
    std::string precision = "double";
    std::optional<int> plan_index;
    int threads = 1;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--eps", cfg.eps, "target remainder bound (0 < eps < 1)");
    cmd->add_option("--R", cfg.R, "override the estimated region radius");
    cmd->add_option("--tol", cfg.tol, "iteration tolerance");
    cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
    cmd->add_option("--samples", cfg.samples, "sample count for verification");
    cmd->add_option("--seed", cfg.seed, "PRNG seed (SKEWFOLD_SEED as fallback)");
    cmd->add_option("--precision", cfg.precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    cmd->add_option("--plan-index", cfg.plan_index, "choose a plan on a two-plan boundary (0 or 1)")
        ->check(CLI::Range(0, 1));
    cmd->add_option("--threads", cfg.threads, "parallelism cap for sample sweeps");
}

void apply_env_seed(RunConfig& cfg, bool seed_given) {
    if (seed_given) return;
    if (const char* env = std::getenv("SKEWFOLD_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
}

WeightPlan choose_plan(const std::vector<WeightPlan>& plans, const RunConfig& cfg) {
    if (plans.size() == 1) {
        if (cfg.plan_index && *cfg.plan_index != 0)
            throw hypothesis_error("plan index " + std::to_string(*cfg.plan_index) +
                                   " out of range: only one plan");
        return plans.front();
    }
    if (!cfg.plan_index) {
        std::string msg = "delta = T_k boundary: two dominant terms exist; choose --plan-index.";
        for (std::size_t i = 0; i < plans.size(); ++i)
            msg += "\n  [" + std::to_string(i) + "] Case " + std::to_string(plans[i].case_tag) +
                   " at vertex " + std::to_string(plans[i].k) + ", (gamma,d) = (" +
                   plans[i].gamma.str() + "," + plans[i].d.str() + ")";
        throw hypothesis_error(msg);
    }
    return plans.at(static_cast<std::size_t>(*cfg.plan_index));
}

RegionSpec build_spec(const SkewProduct& f, const WeightPlan& plan, const RunConfig& cfg) {
    RegionSpec spec = estimate_R(f, plan, cfg.eps);
    if (cfg.R) {
        if (*cfg.R <= 1.0) throw hypothesis_error("--R must exceed 1");
        spec.R = *cfg.R;
    }
    return spec;
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_analyze(const std::string& path) {
    SkewProduct f = parse_map_file(path);
    NewtonPolygon P = newton_polygon(f.q);
    auto plans = classify(f.delta, P);
    json jplans = json::array();
    for (const auto& p : plans) jplans.push_back(plan_json(p, plans.size() == 2));
    json out{{"map", path},
             {"delta", f.delta},
             {"degQ", f.degQ},
             {"polygon", polygon_json(P)},
             {"plans", jplans}};
    enforce_schema(out, "analyze");
    for (const auto& p : out["plans"]) enforce_schema(p, "plan");
    emit(out);
    return EXIT_OK;
}

int cmd_verify(const std::string& path, const RunConfig& cfg) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);
    RegionSpec spec = build_spec(f, plan, cfg);

    json out{{"region", region_json(spec)}};
    VerifyReport b = verify_bounds(f, plan, spec, cfg.eps, cfg.samples, cfg.seed, cfg.threads);
    VerifyReport inv = verify_invariance(f, plan, spec, cfg.samples, cfg.seed, cfg.threads);
    out["bounds"] = verify_json(b);
    out["invariance"] = verify_json(inv);
    if (plan.d == Rational(1)) {
        VerifyReport c = verify_contraction(f, plan, spec, 8, cfg.samples / 10 + 1, cfg.seed,
                                            cfg.threads);
        out["contraction"] = verify_json(c);
    } else {
        out["contraction"] = nullptr;
    }
    enforce_schema(out, "verify");
    emit(out);
    bool ok = b.pass && inv.pass &&
              (out["contraction"].is_null() || out["contraction"]["pass"].get<bool>());
    return ok ? EXIT_OK : EXIT_NONCONVERGED;
}

std::vector<LogPoint> parse_points(const std::vector<std::string>& specs) {
    std::vector<LogPoint> pts;
    for (const auto& s : specs) {
        double a, b, c, d;
        if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
            throw parse_error("point must be z_re,z_im,w_re,w_im", 1, 1);
        pts.push_back(LogPoint::from_point(cpx(a, b), cpx(c, d)));
    }
    return pts;
}

int cmd_bottcher(const std::string& path, const RunConfig& cfg,
                 const std::vector<std::string>& point_specs, int auto_points, bool csv) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);
    if (!plan.degree_ok)
        throw hypothesis_error(
            "Boettcher hypothesis fails: need d >= 2, or d = 1 and delta != T_k for any k");
    RegionSpec spec = build_spec(f, plan, cfg);

    std::vector<LogPoint> pts = parse_points(point_specs);
    if (pts.empty()) {
        auto extra = sample_region(spec, auto_points, cfg.seed);
        pts.insert(pts.end(), extra.begin(), extra.end());
    }

    const bool extended = cfg.precision == "extended";
    json rows = json::array();
    json skipped = json::array();
    bool all_small = true, all_converged = true;
    for (const auto& x : pts) {
        if (!spec.member(x.z(), x.w())) {
            skipped.push_back(json{{"z", complex_json(x.z())}, {"w", complex_json(x.w())}});
            continue;
        }
        BottcherEval ev = phi(f, plan, spec, x, cfg.tol, cfg.max_iter, extended);
        json row = bottcher_row_json(x.z(), x.w(), ev);
        enforce_schema(row, "bottcher_row");
        rows.push_back(row);
        if (!ev.converged) all_converged = false;
        if (!(ev.residual >= 0.0 && ev.residual < cfg.tol * 100.0)) all_small = false;
    }

    if (csv) {
        std::cout << "z_re,z_im,w_re,w_im,phi1_re,phi1_im,phi2_re,phi2_im,residual,n_used,"
                     "tail_bound\n";
        for (const auto& r : rows) {
            std::cout << fmt17(r["z"][0]) << "," << fmt17(r["z"][1]) << "," << fmt17(r["w"][0])
                      << "," << fmt17(r["w"][1]) << "," << fmt17(r["phi1"][0]) << ","
                      << fmt17(r["phi1"][1]) << "," << fmt17(r["phi2"][0]) << ","
                      << fmt17(r["phi2"][1]) << "," << fmt17(r["residual"]) << ","
                      << r["n_used"].get<int>() << "," << fmt17(r["tail_bound"]) << "\n";
        }
    } else {
        emit(json{{"region", region_json(spec)}, {"rows", rows}, {"skipped", skipped}});
    }
    if (!all_converged) return EXIT_NONCONVERGED;
    return all_small ? EXIT_OK : EXIT_NONCONVERGED;
}

int cmd_transform(const std::string& path, const RunConfig& cfg, const std::string& kind,
                  long long r, long long s, long long r2, long long s2) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);

    json out;
    auto run_one = [&](const MonomialSubstitution& sub) {
        json j = transform_json(pushforward(f, plan, sub));
        enforce_schema(j, "transform");
        return j;
    };
    if (kind == "blowup1") out = run_one(MonomialSubstitution::blowup1());
    else if (kind == "blowup2") out = run_one(MonomialSubstitution::blowup2());
    else if (kind == "cover1") out = run_one(MonomialSubstitution::cover1(r, s));
    else if (kind == "cover2") out = run_one(MonomialSubstitution::cover2(r, s));
    else if (kind == "pipeline") {
        if (plan.case_tag != 4)
            throw hypothesis_error("--kind pipeline applies to Case 4 plans");
        TransformedMap t1 = pushforward(f, plan, MonomialSubstitution::cover1(r, s));
        TransformedMap t2 = pushforward_stage2(t1, plan, MonomialSubstitution::cover2(r2, s2));
        CaseCheck cc = intermediate_case_check(t1, plan);
        json j1 = transform_json(t1);
        json j2 = transform_json(t2);
        enforce_schema(j1, "transform");
        enforce_schema(j2, "transform");
        out = json{{"stage1", j1},
                   {"stage2", j2},
                   {"intermediate_case3", cc.ok},
                   {"intermediate_note", cc.note}};
        emit(out);
        return EXIT_OK;
    } else {
        throw hypothesis_error("unknown --kind " + kind);
    }
    emit(out);
    return EXIT_OK;
}

int cmd_infinity(const std::string& path, const RunConfig& cfg,
                 const std::vector<long long>& weighted) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);
    if (weighted.empty()) {
        json out = infinity_json(classify_infinity(f, plan));
        enforce_schema(out, "infinity");
        emit(out);
    } else {
        json out = weighted_infinity_json(classify_weighted(f, plan, weighted[0], weighted[1]));
        enforce_schema(out, "weighted_infinity");
        emit(out);
    }
    return EXIT_OK;
}

int cmd_afo(const std::string& path, const RunConfig& cfg, int n_max) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);
    AfoRegion A = afo_region(plan);
    json ja = afo_json(A);
    enforce_schema(ja, "afo");
    json pre = json::array();
    for (int n = 0; n <= n_max; ++n) {
        json jp = preimage_json(preimage_region(plan, n));
        enforce_schema(jp, "preimage");
        pre.push_back(jp);
    }
    emit(json{{"afo", ja}, {"preimages", pre}});
    return EXIT_OK;
}

int cmd_grid(const std::string& path, const RunConfig& cfg, int nx, int ny,
             const std::string& mode, bool csv) {
    SkewProduct f = parse_map_file(path);
    auto plans = classify(f.delta, newton_polygon(f.q));
    WeightPlan plan = choose_plan(plans, cfg);
    RegionSpec spec = build_spec(f, plan, cfg);

    // Deterministic log-grid over the cone, zero phases.
    const double rho = spec.log_R();
    const double l1d = spec.l1.to_double();
    const bool two_sided = spec.case_tag >= 3;
    const double l2d = two_sided ? spec.l2.value().to_double() : 0.0;
    double x_lo = two_sided ? (1.0 + l2d) * rho / l2d : rho;
    std::vector<LogPoint> pts;
    for (int ix = 0; ix < nx; ++ix) {
        double x = x_lo + (ix + 1.0) / (nx + 1.0) * 20.0;
        double y_lo = rho + l1d * x;
        double y_hi = two_sided ? std::min(y_lo + 20.0, (l1d + l2d) * x - l2d * rho) : y_lo + 20.0;
        if (!(y_hi > y_lo)) continue;
        for (int iy = 0; iy < ny; ++iy) {
            double y = y_lo + (iy + 1.0) / (ny + 1.0) * (y_hi - y_lo);
            pts.push_back(LogPoint{cpx(x, 0.0), cpx(y, 0.0)});
        }
    }

    if (mode == "basin") {
        LiftedMap F = LiftedMap::make(f, plan);
        if (csv) std::cout << "log_abs_z,log_abs_w,label\n";
        json rows = json::array();
        for (const auto& p : pts) {
            LiftPoint x = to_lift(p);
            std::string label = "0";
            try {
                for (int n = 0; n < 12; ++n) {
                    auto [zeta, eta] = F.remainders(x);
                    if (std::abs(zeta) >= 1.0 || std::abs(eta) >= 1.0) break;
                    x = F.step(x, std::log(cpx(1.0) + zeta), std::log(cpx(1.0) + eta));
                    double diff = x.W.real() - x.Z.real();
                    if (diff > 1e3) { label = "A+"; break; }
                    if (diff < -1e3) { label = "A-"; break; }
                }
            } catch (const error&) {
                // remainder overflow: leave the label undecided
            }
            if (csv)
                std::cout << fmt17(p.Z.real()) << "," << fmt17(p.W.real()) << "," << label << "\n";
            else
                rows.push_back(json{{"x", p.Z.real()}, {"y", p.W.real()},
                                    {"label", label}});
        }
        if (!csv) emit(json{{"mode", "basin"}, {"rows", rows}});
        return EXIT_OK;
    }

    const bool extended = cfg.precision == "extended";
    std::erase_if(pts, [&](const LogPoint& x) { return !spec.member(x.z(), x.w()); });

    // Evaluations run in parallel; rows are emitted in index order.
    std::vector<BottcherEval> evs(pts.size());
    parallel_chunks(pts.size(), cfg.threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t i = b; i < e; ++i)
            evs[i] = phi(f, plan, spec, pts[i], cfg.tol, cfg.max_iter, extended);
    });

    json rows = json::array();
    bool all_converged = true;
    if (csv)
        std::cout << "z_re,z_im,w_re,w_im,phi1_re,phi1_im,phi2_re,phi2_im,residual,n_used,"
                     "tail_bound\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& x = pts[i];
        const auto& ev = evs[i];
        if (!ev.converged) all_converged = false;
        if (csv) {
            std::cout << fmt17(x.z().real()) << "," << fmt17(x.z().imag()) << ","
                      << fmt17(x.w().real()) << "," << fmt17(x.w().imag()) << ","
                      << fmt17(ev.phi1.real()) << "," << fmt17(ev.phi1.imag()) << ","
                      << fmt17(ev.phi2.real()) << "," << fmt17(ev.phi2.imag()) << ","
                      << fmt17(ev.residual) << "," << ev.n_used << "," << fmt17(ev.tail_bound)
                      << "\n";
        } else {
            json row = bottcher_row_json(x.z(), x.w(), ev);
            enforce_schema(row, "bottcher_row");
            rows.push_back(row);
        }
    }
    if (!csv) emit(json{{"mode", "bottcher"}, {"region", region_json(spec)}, {"rows", rows}});
    return all_converged ? EXIT_OK : EXIT_NONCONVERGED;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewfold: Newton-polygon classification and Boettcher coordinates near "
                 "infinity for polynomial skew products"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string map_path;

    auto* analyze = app.add_subcommand("analyze", "Newton polygon, case, weights, intervals");
    analyze->add_option("map", map_path, "map file")->required();

    auto* verify = app.add_subcommand("verify", "estimate R and verify bounds and invariance");
    verify->add_option("map", map_path, "map file")->required();
    add_common(verify, cfg);

    auto* bottcher = app.add_subcommand("bottcher", "evaluate the Boettcher coordinate");
    bottcher->add_option("map", map_path, "map file")->required();
    std::vector<std::string> point_specs;
    int auto_points = 10;
    bool csv = false;
    bottcher->add_option("--point", point_specs, "point as z_re,z_im,w_re,w_im (repeatable)");
    bottcher->add_option("--auto", auto_points, "sample this many region points when no --point");
    bottcher->add_flag("--csv", csv, "CSV rows instead of JSON");
    add_common(bottcher, cfg);

    auto* transform = app.add_subcommand("transform", "blow-up / covering pushforward");
    transform->add_option("map", map_path, "map file")->required();
    std::string kind = "blowup1";
    long long tr = 1, ts = 1, tr2 = 1, ts2 = 1;
    transform->add_option("--kind", kind, "blowup1|blowup2|cover1|cover2|pipeline");
    transform->add_option("--r", tr, "cover r (stage 1)");
    transform->add_option("--s", ts, "cover s (stage 1)");
    transform->add_option("--r2", tr2, "cover r (stage 2)");
    transform->add_option("--s2", ts2, "cover s (stage 2)");
    add_common(transform, cfg);

    auto* infinity = app.add_subcommand("infinity", "classification at infinity");
    infinity->add_option("map", map_path, "map file")->required();
    std::vector<long long> weighted;
    infinity->add_option("--weighted", weighted, "weights r s for P(r,s,1)")->expected(2);
    add_common(infinity, cfg);

    auto* afo = app.add_subcommand("afo", "A_{f0} catalog entry and preimage regions");
    afo->add_option("map", map_path, "map file")->required();
    int n_max = 4;
    afo->add_option("--n", n_max, "max preimage depth");
    add_common(afo, cfg);

    auto* grid = app.add_subcommand("grid", "Boettcher or basin labels over a log grid");
    grid->add_option("map", map_path, "map file")->required();
    int nx = 10, ny = 10;
    std::string mode = "bottcher";
    bool grid_csv = false;
    grid->add_option("--nx", nx, "grid columns");
    grid->add_option("--ny", ny, "grid rows");
    grid->add_option("--mode", mode, "bottcher | basin")
        ->check(CLI::IsMember({"bottcher", "basin"}));
    grid->add_flag("--csv", grid_csv, "CSV rows instead of JSON");
    add_common(grid, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        bool seed_given = false;
        for (auto* sc : {verify, bottcher, transform, infinity, afo, grid})
            if (sc->count("--seed")) seed_given = true;
        apply_env_seed(cfg, seed_given);
        if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
            throw hypothesis_error("--eps must satisfy 0 < eps < 1");
        if (!(cfg.tol > 0.0)) throw hypothesis_error("--tol must be positive");

        if (analyze->parsed()) return cmd_analyze(map_path);
        if (verify->parsed()) return cmd_verify(map_path, cfg);
        if (bottcher->parsed()) return cmd_bottcher(map_path, cfg, point_specs, auto_points, csv);
        if (transform->parsed()) return cmd_transform(map_path, cfg, kind, tr, ts, tr2, ts2);
        if (infinity->parsed()) return cmd_infinity(map_path, cfg, weighted);
        if (afo->parsed()) return cmd_afo(map_path, cfg, n_max);
        if (grid->parsed()) return cmd_grid(map_path, cfg, nx, ny, mode, grid_csv);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return EXIT_HYPOTHESIS;
    } catch (const convergence_error& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return EXIT_NONCONVERGED;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return EXIT_OK;
}
