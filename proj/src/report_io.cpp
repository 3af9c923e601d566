#include "skt/report_io.hpp"

#include <cstdio>

#include "skt/errors.hpp"

namespace skt {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

nlohmann::json params_to_json(const SktParams& p) {
    return {{"a1", p.a1}, {"a2", p.a2}, {"b1", p.b1}, {"b2", p.b2},
            {"c1", p.c1}, {"c2", p.c2}, {"d1", p.d1}, {"d2", p.d2},
            {"d12", p.d12}, {"d21", p.d21}};
}

SktParams params_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    static const char* keys[] = {"a1", "a2", "b1", "b2", "c1",
                                 "c2", "d1", "d2", "d12", "d21"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) known |= (key == k);
        if (!known) throw ConfigError(path + "." + key + ": unknown key");
        if (!value.is_number())
            throw ConfigError(path + "." + key + ": expected a number");
    }
    SktParams p;
    auto get = [&](const char* k) -> double {
        if (!j.contains(k)) throw ConfigError(path + "." + k + ": missing key");
        return j.at(k).get<double>();
    };
    p.a1 = get("a1");
    p.a2 = get("a2");
    p.b1 = get("b1");
    p.b2 = get("b2");
    p.c1 = get("c1");
    p.c2 = get("c2");
    p.d1 = get("d1");
    p.d2 = get("d2");
    p.d12 = get("d12");
    p.d21 = get("d21");
    return p;
}

std::string residual_report_csv(const ResidualReport& r) {
    std::string out =
        "equation_id,max_abs,mean_abs,samples,worst_t,worst_x,worst_u,worst_v,pass\n";
    for (const auto& e : r.equations) {
        out += e.equation_id + "," + format_g17(e.max_abs) + "," +
               format_g17(e.mean_abs) + "," + std::to_string(e.samples) + "," +
               format_g17(e.worst_t) + "," + format_g17(e.worst_x) + "," +
               format_g17(e.worst_u) + "," + format_g17(e.worst_v) + "," +
               (e.pass ? "true" : "false") + "\n";
    }
    return out;
}

nlohmann::json residual_report_json(const ResidualReport& r) {
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& e : r.equations)
        eqs.push_back({{"equation_id", e.equation_id},
                       {"max_abs", e.max_abs},
                       {"mean_abs", e.mean_abs},
                       {"samples", e.samples},
                       {"worst_t", e.worst_t},
                       {"worst_x", e.worst_x},
                       {"worst_u", e.worst_u},
                       {"worst_v", e.worst_v},
                       {"pass", e.pass}});
    return {{"equations", eqs},
            {"tolerance", r.tolerance},
            {"requested", r.requested},
            {"evaluated", r.evaluated},
            {"skipped", r.skipped},
            {"pass", r.pass}};
}

nlohmann::json ambiguity_report_json(const AmbiguityReport& a) {
    auto terms = [](const std::vector<TermValue>& ts) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& t : ts) out.push_back({{"term", t.name}, {"value", t.value}});
        return out;
    };
    return {{"kind", "transcription_ambiguity"},
            {"case_id", a.case_id},
            {"operator", operator_name(a.op)},
            {"failing_equations", a.failing_equations},
            {"worst_point",
             {{"t", a.worst_t}, {"x", a.worst_x}, {"u", a.worst_u}, {"v", a.worst_v}}},
            {"terms_eq16", terms(a.terms_eq16)},
            {"terms_eq17", terms(a.terms_eq17)}};
}

nlohmann::json scenario_report_json(const ScenarioReport& r) {
    nlohmann::json j = {{"gamma", r.gamma},
                        {"threshold", r.threshold},
                        {"classification", scenario_name(r.classification)}};
    if (r.d12_special) j["d12_special"] = *r.d12_special;
    return j;
}

nlohmann::json convergence_report_json(const ConvergenceReport& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"n", l.n}, {"h", l.h}, {"linf", l.linf}, {"l2", l.l2}});
    return {{"levels", levels},
            {"linf_orders", r.linf_orders},
            {"l2_orders", r.l2_orders},
            {"exact", r.exact},
            {"flagged", r.flagged}};
}

nlohmann::json asymptotics_report_json(const AsymptoticsReport& r) {
    return {{"times", r.times},
            {"sup_u", r.sup_u},
            {"dist_v_to_a2", r.dist_v_to_a2},
            {"verdict", scenario_name(r.verdict)},
            {"agrees_with_classification", r.agrees_with_classification},
            {"limit_profile_rel_dev", r.limit_profile_rel_dev},
            {"limit_profile_ok", r.limit_profile_ok}};
}

std::string conservation_report_csv(const ConservationReport& r) {
    std::string out = "t_mid,defect\n";
    for (std::size_t i = 0; i < r.defects.size(); ++i)
        out += format_g17(r.times[i]) + "," + format_g17(r.defects[i]) + "\n";
    return out;
}

nlohmann::json conservation_report_json(const ConservationReport& r) {
    return {{"times", r.times}, {"defects", r.defects}, {"max_defect", r.max_defect}};
}

std::string trajectory_csv(const Trajectory& t) {
    std::string out = "t,x,u,v\n";
    for (const auto& s : t.states)
        for (int i = 0; i < t.grid.n; ++i)
            out += format_g17(s.t) + "," + format_g17(t.grid.x(i)) + "," +
                   format_g17(s.u[i]) + "," + format_g17(s.v[i]) + "\n";
    return out;
}

nlohmann::json trajectory_sidecar_json(const Trajectory& t, const SktParams& p) {
    return {{"grid",
             {{"x_min", t.grid.x_min}, {"x_max", t.grid.x_max}, {"n", t.grid.n}}},
            {"params", params_to_json(p)},
            {"termination", termination_name(t.termination)},
            {"steps", t.steps},
            {"stored_states", t.states.size()},
            {"negative_diffusivity_flag", t.negative_diffusivity_flag},
            {"negative_diffusivity_steps", t.negative_diffusivity_steps}};
}

}  // namespace skt
