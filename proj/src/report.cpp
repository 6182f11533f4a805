#include "skewfold/report.hpp"

namespace skewfold {

json rational_json(const Rational& r) { return r.str(); }

json extended_json(const ExtendedRational& r) { return r.str(); }

json complex_json(const cpx& c) { return json::array({c.real(), c.imag()}); }

json polygon_json(const NewtonPolygon& P) {
    json vertices = json::array();
    for (const auto& [n, m] : P.vertices) vertices.push_back(json::array({n.str(), m.str()}));
    json intercepts = json::array();
    for (const auto& T : P.intercepts) intercepts.push_back(T.str());
    json weights = json::array();
    for (const auto& w : P.edge_weights) weights.push_back(w.str());
    return json{{"vertices", vertices}, {"intercepts", intercepts}, {"edge_weights", weights}};
}

json interval_json(const WeightInterval& I) {
    return json{{"lo", I.lo.str()},
                {"lo_open", I.lo_open},
                {"hi", I.hi.str()},
                {"hi_open", I.hi_open || I.hi.is_infinite()},
                {"degenerate_case1", I.case1_degenerate},
                {"text", I.str()}};
}

json plan_json(const WeightPlan& plan, bool two_plans) {
    json out{{"case", plan.case_tag},
             {"k", plan.k},
             {"gamma", plan.gamma.str()},
             {"d", plan.d.str()},
             {"l1", plan.l1.str()},
             {"l2", plan.l2.str()},
             {"alpha0", plan.alpha0 ? json(plan.alpha0->str()) : json("undefined")},
             {"interval", interval_json(interval(plan))},
             {"degree_ok", plan.degree_ok},
             {"M", plan.M.str()},
             {"two_plans", two_plans},
             {"tilde_gamma", plan.tilde_gamma.str()},
             {"tilde_d", plan.tilde_d.str()}};
    out["interval2_at_l1"] =
        plan.case_tag == 4 ? interval_json(interval2(plan, plan.l1)) : json(nullptr);
    if (plan.case_tag <= 2) {
        L1Star st = l1_star(plan);
        out["l1_star"] = st.exists ? json(st.value.str()) : json("does not exist");
    } else {
        out["l1_star"] = nullptr;
    }
    return out;
}

json verify_json(const VerifyReport& rep) {
    json viol = json::array();
    for (const auto& [z, w] : rep.violations)
        viol.push_back(json{{"z", complex_json(z)}, {"w", complex_json(w)}});
    return json{{"max_zeta", rep.max_zeta}, {"max_eta", rep.max_eta},   {"violations", viol},
                {"R", rep.R},               {"eps", rep.eps},           {"samples", rep.samples},
                {"seed", rep.seed},         {"pass", rep.pass}};
}

json region_json(const RegionSpec& spec) {
    return json{{"case", spec.case_tag}, {"R", spec.R},
                {"eps", spec.eps},       {"l1", spec.l1.str()},
                {"l2", spec.l2.str()},   {"log_margin", spec.log_margin}};
}

json transform_json(const TransformedMap& t) {
    json table = json::array();
    for (const auto& [a, b] : t.term_table) table.push_back(json::array({a.str(), b.str()}));
    return json{{"kind", subst_kind_name(t.kind)},
                {"r", t.r},
                {"s", t.s},
                {"stage", t.stage},
                {"well_defined", t.well_defined},
                {"normal_form", verify_normal_form(t)},
                {"reason", t.reason},
                {"dominant_exponents",
                 json{{"first", json::array({t.dom_first.first.str(), t.dom_first.second.str()})},
                      {"second",
                       json::array({t.dom_second.first.str(), t.dom_second.second.str()})}}},
                {"term_table", table},
                {"polygon", polygon_json(t.polygon)},
                {"preimage_region", t.preimage_region}};
}

namespace {
json h_json(const std::vector<Term>& h) {
    json out = json::array();
    for (const auto& t : h)
        out.push_back(json{{"i", t.ez.str()}, {"j", t.ew.str()}, {"coeff", complex_json(t.coeff)}});
    return out;
}
json pair_json(const ExponentPair& p) { return json::array({p.first.str(), p.second.str()}); }
}  // namespace

json infinity_json(const InfinityReport& rep) {
    return json{{"D", rep.D},
                {"lambda", rep.lambda},
                {"h", h_json(rep.h)},
                {"NM", pair_json(rep.NM)},
                {"NstarMstar", pair_json(rep.NstarMstar)},
                {"trichotomy", trichotomy_name(rep.trichotomy)},
                {"p_plus", point_status_name(rep.p_plus)},
                {"p_minus", point_status_name(rep.p_minus)},
                {"basin", basin_name(rep.basin)}};
}

json weighted_infinity_json(const WeightedInfinityReport& rep) {
    return json{{"r", rep.r},
                {"s", rep.s},
                {"l", rep.l.str()},
                {"D_l", rep.D_l.str()},
                {"lambda_l", rep.lambda_l.str()},
                {"integral", rep.integral},
                {"conditional", rep.conditional},
                {"h", h_json(rep.h)},
                {"NM", pair_json(rep.NM)},
                {"NstarMstar", pair_json(rep.NstarMstar)},
                {"trichotomy", trichotomy_name(rep.trichotomy)},
                {"p_plus", point_status_name(rep.p_plus)},
                {"p_minus", point_status_name(rep.p_minus)},
                {"basin", basin_name(rep.basin)}};
}

json afo_json(const AfoRegion& A) {
    return json{{"covered", A.covered()},
                {"item", A.item},
                {"description", A.description},
                {"exponent", A.exponent ? json(A.exponent->str()) : json(nullptr)}};
}

json preimage_json(const PreimageRegion& P) {
    json out{{"case", P.case_tag},
             {"n", P.n},
             {"z_exp", P.z_exp.str()},
             {"w_exp", P.w_exp.str()},
             {"T_lo", P.T_lo.str()},
             {"has_upper", P.has_upper},
             {"up_exp", nullptr},
             {"T_up", nullptr}};
    if (P.has_upper) {
        out["up_exp"] = P.up_exp.str();
        out["T_up"] = P.T_up.str();
    }
    return out;
}

json bottcher_row_json(const cpx& z, const cpx& w, const BottcherEval& ev) {
    return json{{"z", complex_json(z)},
                {"w", complex_json(w)},
                {"phi1", complex_json(ev.phi1)},
                {"phi2", complex_json(ev.phi2)},
                {"residual", ev.residual},
                {"n_used", ev.n_used},
                {"tail_bound", ev.tail_bound},
                {"converged", ev.converged}};
}

json critical_json(const CriticalReport& rep) {
    return json{{"min_modulus", rep.min_modulus},
                {"argmin_z", complex_json(rep.argmin_z)},
                {"argmin_w", complex_json(rep.argmin_w)},
                {"accepted", rep.accepted},
                {"excluded", rep.excluded},
                {"pass", rep.pass},
                {"warning", rep.warning}};
}

namespace {

bool check_type(const json& v, const std::string& tag, std::string* error,
                const std::string& path);

bool check_object(const json& v, const json& schema, std::string* error,
                  const std::string& path) {
    if (!v.is_object()) {
        if (error) *error = path + ": expected object";
        return false;
    }
    for (auto it = schema.begin(); it != schema.end(); ++it) {
        if (!v.contains(it.key())) {
            if (error) *error = path + ": missing field '" + it.key() + "'";
            return false;
        }
        const json& sub = it.value();
        const std::string sub_path = path + "." + it.key();
        if (sub.is_object()) {
            if (!check_object(v.at(it.key()), sub, error, sub_path)) return false;
        } else if (!check_type(v.at(it.key()), sub.get<std::string>(), error, sub_path)) {
            return false;
        }
    }
    for (auto it = v.begin(); it != v.end(); ++it) {
        if (!schema.contains(it.key())) {
            if (error) *error = path + ": unknown field '" + it.key() + "'";
            return false;
        }
    }
    return true;
}

bool check_type(const json& v, const std::string& tag, std::string* error,
                const std::string& path) {
    auto fail = [&](const char* what) {
        if (error) *error = path + ": expected " + what;
        return false;
    };
    if (tag == "any") return true;
    if (tag == "string") return v.is_string() ? true : fail("string");
    if (tag == "number") return v.is_number() ? true : fail("number");
    if (tag == "integer") return v.is_number_integer() ? true : fail("integer");
    if (tag == "boolean") return v.is_boolean() ? true : fail("boolean");
    if (tag == "rational") {
        if (!v.is_string()) return fail("rational string");
        return true;
    }
    if (tag == "complex") {
        if (!(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()))
            return fail("[re, im] pair");
        return true;
    }
    if (tag == "nullable_rational") {
        if (v.is_null() || v.is_string()) return true;
        return fail("rational string or null");
    }
    if (tag == "array") return v.is_array() ? true : fail("array");
    if (tag.rfind("array:", 0) == 0) {
        if (!v.is_array()) return fail("array");
        std::string inner = tag.substr(6);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!check_type(v[i], inner, error, path + "[" + std::to_string(i) + "]")) return false;
        return true;
    }
    if (error) *error = path + ": unknown schema tag '" + tag + "'";
    return false;
}

}  // namespace

bool validate_schema(const json& value, const json& schema, std::string* error) {
    return check_object(value, schema, error, "$");
}

json schema_for(const std::string& name) {
    static const json polygon_schema{
        {"vertices", "array"}, {"intercepts", "array:rational"}, {"edge_weights", "array:rational"}};
    static const json interval_schema{{"lo", "rational"},     {"lo_open", "boolean"},
                                      {"hi", "string"},       {"hi_open", "boolean"},
                                      {"degenerate_case1", "boolean"}, {"text", "string"}};
    if (name == "plan") {
        json s{{"case", "integer"},      {"k", "integer"},
               {"gamma", "rational"},    {"d", "rational"},
               {"l1", "rational"},       {"l2", "string"},
               {"alpha0", "string"},     {"interval", interval_schema},
               {"degree_ok", "boolean"}, {"M", "rational"},
               {"two_plans", "boolean"}, {"tilde_gamma", "rational"},
               {"tilde_d", "rational"},  {"interval2_at_l1", "any"},
               {"l1_star", "any"}};
        return s;
    }
    if (name == "analyze")
        return json{{"map", "string"},
                    {"delta", "integer"},
                    {"degQ", "integer"},
                    {"polygon", polygon_schema},
                    {"plans", "array"}};
    static const json region_schema{{"case", "integer"}, {"R", "number"},
                                    {"eps", "number"},   {"l1", "rational"},
                                    {"l2", "string"},    {"log_margin", "number"}};
    static const json verify_report_schema{
        {"max_zeta", "number"}, {"max_eta", "number"}, {"violations", "array"},
        {"R", "number"},        {"eps", "number"},     {"samples", "integer"},
        {"seed", "integer"},    {"pass", "boolean"}};
    if (name == "verify")
        return json{{"region", region_schema},
                    {"bounds", verify_report_schema},
                    {"invariance", verify_report_schema},
                    {"contraction", "any"}};
    if (name == "verify_report") return verify_report_schema;
    if (name == "transform")
        return json{{"kind", "string"},
                    {"r", "integer"},
                    {"s", "integer"},
                    {"stage", "integer"},
                    {"well_defined", "boolean"},
                    {"normal_form", "boolean"},
                    {"reason", "string"},
                    {"dominant_exponents",
                     json{{"first", "array:rational"}, {"second", "array:rational"}}},
                    {"term_table", "array"},
                    {"polygon", polygon_schema},
                    {"preimage_region", "string"}};
    if (name == "infinity")
        return json{{"D", "integer"},        {"lambda", "integer"},   {"h", "array"},
                    {"NM", "array:rational"}, {"NstarMstar", "array:rational"},
                    {"trichotomy", "string"}, {"p_plus", "string"},    {"p_minus", "string"},
                    {"basin", "string"}};
    if (name == "weighted_infinity")
        return json{{"r", "integer"},        {"s", "integer"},        {"l", "rational"},
                    {"D_l", "rational"},     {"lambda_l", "rational"}, {"integral", "boolean"},
                    {"conditional", "boolean"}, {"h", "array"},       {"NM", "array:rational"},
                    {"NstarMstar", "array:rational"}, {"trichotomy", "string"},
                    {"p_plus", "string"},    {"p_minus", "string"},   {"basin", "string"}};
    if (name == "afo")
        return json{{"covered", "boolean"},
                    {"item", "integer"},
                    {"description", "string"},
                    {"exponent", "nullable_rational"}};
    if (name == "bottcher_row")
        return json{{"z", "complex"},        {"w", "complex"},       {"phi1", "complex"},
                    {"phi2", "complex"},     {"residual", "number"}, {"n_used", "integer"},
                    {"tail_bound", "number"}, {"converged", "boolean"}};
    if (name == "preimage")
        return json{{"case", "integer"}, {"n", "integer"},      {"z_exp", "rational"},
                    {"w_exp", "rational"}, {"T_lo", "rational"}, {"has_upper", "boolean"},
                    {"up_exp", "any"},     {"T_up", "any"}};
    if (name == "critical")
        return json{{"min_modulus", "number"}, {"argmin_z", "complex"}, {"argmin_w", "complex"},
                    {"accepted", "integer"},   {"excluded", "integer"}, {"pass", "boolean"},
                    {"warning", "boolean"}};
    throw error("no schema named " + name);
}

void enforce_schema(const json& value, const std::string& name) {
    std::string err;
    if (!validate_schema(value, schema_for(name), &err))
        throw error("schema violation for " + name + ": " + err);
}

}  // namespace skewfold
