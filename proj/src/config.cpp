#include "skt/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "skt/catalog.hpp"
#include "skt/conservation.hpp"
#include "skt/errors.hpp"
#include "skt/report_io.hpp"
#include "skt/residuals.hpp"
#include "skt/scenario.hpp"
#include "skt/solutions.hpp"
#include "skt/solver.hpp"
#include "skt/transforms.hpp"

namespace skt {

namespace {

using nlohmann::json;

// ----------------------------------------------------------------- schema
enum class KeyType { Number, Integer, Boolean, String, Object, Array };

struct KeySpec {
    const char* name;
    bool required;
    KeyType type;
};

const char* type_name(KeyType t) {
    switch (t) {
        case KeyType::Number: return "number";
        case KeyType::Integer: return "integer";
        case KeyType::Boolean: return "boolean";
        case KeyType::String: return "string";
        case KeyType::Object: return "object";
        case KeyType::Array: return "array";
    }
    return "?";
}

bool type_matches(const json& v, KeyType t) {
    switch (t) {
        case KeyType::Number: return v.is_number();
        case KeyType::Integer: return v.is_number_integer();
        case KeyType::Boolean: return v.is_boolean();
        case KeyType::String: return v.is_string();
        case KeyType::Object: return v.is_object();
        case KeyType::Array: return v.is_array();
    }
    return false;
}

void check_object(const json& j, const std::string& path,
                  std::initializer_list<KeySpec> keys) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const KeySpec* spec = nullptr;
        for (const auto& k : keys)
            if (key == k.name) spec = &k;
        if (!spec) throw ConfigError(path + "." + key + ": unknown key");
        if (!type_matches(value, spec->type))
            throw ConfigError(path + "." + key + ": expected " +
                              type_name(spec->type));
    }
    for (const auto& k : keys)
        if (k.required && !j.contains(k.name))
            throw ConfigError(path + "." + k.name + ": missing key");
}

double num_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

// ----------------------------------------------------------------- blocks
SamplingSpec parse_sampling(const json& cfg, const std::string& path) {
    SamplingSpec s;
    if (!cfg.contains("sampling")) return s;
    const json& j = cfg.at("sampling");
    check_object(j, path + ".sampling",
                 {{"seed", false, KeyType::Integer},
                  {"count", false, KeyType::Integer},
                  {"t", false, KeyType::Array},
                  {"x", false, KeyType::Array},
                  {"u", false, KeyType::Array},
                  {"v", false, KeyType::Array}});
    auto range = [&](const char* key, SamplingSpec::Range fallback) {
        if (!j.contains(key)) return fallback;
        const json& r = j.at(key);
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            throw ConfigError(path + ".sampling." + key + ": expected [lo, hi]");
        return SamplingSpec::Range{r[0].get<double>(), r[1].get<double>()};
    };
    s.t = range("t", s.t);
    s.x = range("x", s.x);
    s.u = range("u", s.u);
    s.v = range("v", s.v);
    if (j.contains("count")) s.count = j.at("count").get<int>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

FamilyConstants parse_family_constants(const json& j, const std::string& path) {
    FamilyConstants c;
    if (!j.contains("constants")) return c;
    const json& k = j.at("constants");
    check_object(k, path + ".constants",
                 {{"C1", false, KeyType::Number},
                  {"C2", false, KeyType::Number},
                  {"C3", false, KeyType::Number},
                  {"C4", false, KeyType::Number},
                  {"x0", false, KeyType::Number},
                  {"alpha", false, KeyType::Number},
                  {"f_alpha1", false, KeyType::Number},
                  {"f_alpha2", false, KeyType::Number},
                  {"sign", false, KeyType::String}});
    c.C1 = num_or(k, "C1", 0);
    c.C2 = num_or(k, "C2", 0);
    c.C3 = num_or(k, "C3", 0);
    c.C4 = num_or(k, "C4", 0);
    c.x0 = num_or(k, "x0", 0);
    c.alpha = num_or(k, "alpha", 0);
    c.f_alpha1 = num_or(k, "f_alpha1", 0);
    c.f_alpha2 = num_or(k, "f_alpha2", 0);
    if (k.contains("sign")) {
        const std::string s = k.at("sign").get<std::string>();
        if (s == "plus") c.sign = SignChoice::Plus;
        else if (s == "minus") c.sign = SignChoice::Minus;
        else throw ConfigError(path + ".constants.sign: expected plus or minus");
    }
    return c;
}

SolutionFamily parse_family(const json& j, const std::string& path) {
    check_object(j, path,
                 {{"tag", true, KeyType::String},
                  {"params", false, KeyType::Object},
                  {"polymer", false, KeyType::Object},
                  {"constants", false, KeyType::Object}});
    const FamilyTag tag = family_from_name(j.at("tag").get<std::string>());
    const FamilyConstants c = parse_family_constants(j, path);
    if (tag == FamilyTag::Polymer49) {
        if (!j.contains("polymer"))
            throw ConfigError(path + ".polymer: missing key (required for Polymer49)");
        const json& q = j.at("polymer");
        check_object(q, path + ".polymer",
                     {{"K", true, KeyType::Number},
                      {"a3", true, KeyType::Number},
                      {"d3", true, KeyType::Number},
                      {"d1", true, KeyType::Number},
                      {"d2", true, KeyType::Number}});
        PolymerParams pp{q.at("K").get<double>(), q.at("a3").get<double>(),
                         q.at("d3").get<double>(), q.at("d1").get<double>(),
                         q.at("d2").get<double>()};
        return make_polymer_family(pp, c);
    }
    if (!j.contains("params"))
        throw ConfigError(path + ".params: missing key");
    return make_family(tag, params_from_json(j.at("params"), path + ".params"), c);
}

int default_case_for(OperatorKind k) {
    switch (k) {
        case OperatorKind::Q1: return 1;
        case OperatorKind::Q2: return 2;
        case OperatorKind::Q3_0: return 2;
        case OperatorKind::Q3: return 10;
        case OperatorKind::Q4: return 3;
        case OperatorKind::Q5: return 4;
        case OperatorKind::Q6: return 5;
        case OperatorKind::Q7_0: return 6;
        case OperatorKind::Q7: return 6;
        case OperatorKind::Q8: return 7;
        case OperatorKind::Q9: return 8;
        case OperatorKind::Q10: return 8;
        case OperatorKind::Q11_0: return 9;
        case OperatorKind::Q11: return 9;
        case OperatorKind::Q12: return 11;
        case OperatorKind::Q13: return 12;
    }
    throw ConfigError("unknown operator kind");
}

OperatorConstants parse_operator_constants(const json& j, const std::string& path) {
    OperatorConstants c;
    if (!j.contains("constants")) return c;
    const json& k = j.at("constants");
    check_object(k, path + ".constants",
                 {{"alpha", false, KeyType::Number},
                  {"alpha0", false, KeyType::Number},
                  {"f_alpha1", false, KeyType::Number},
                  {"f_alpha2", false, KeyType::Number}});
    c.alpha = num_or(k, "alpha", 0);
    c.alpha0 = num_or(k, "alpha0", 0);
    c.f_alpha1 = num_or(k, "f_alpha1", 0);
    c.f_alpha2 = num_or(k, "f_alpha2", 0);
    return c;
}

SymmetryOperator parse_operator(const json& j, const std::string& path) {
    check_object(j, path,
                 {{"kind", true, KeyType::String},
                  {"case_id", false, KeyType::Integer},
                  {"params", true, KeyType::Object},
                  {"constants", false, KeyType::Object}});
    const OperatorKind kind = operator_from_name(j.at("kind").get<std::string>());
    const int case_id =
        j.contains("case_id") ? j.at("case_id").get<int>() : default_case_for(kind);
    return make_operator(kind, case_id,
                         params_from_json(j.at("params"), path + ".params"),
                         parse_operator_constants(j, path));
}

Grid1D parse_grid(const json& j, const std::string& path) {
    check_object(j, path,
                 {{"x_min", true, KeyType::Number},
                  {"x_max", true, KeyType::Number},
                  {"n", true, KeyType::Integer}});
    return make_grid(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                     j.at("n").get<int>());
}

TimeSpec parse_time(const json& cfg, const std::string& path) {
    TimeSpec ts;
    if (!cfg.contains("time")) return ts;
    const json& j = cfg.at("time");
    check_object(j, path + ".time",
                 {{"t_end", true, KeyType::Number},
                  {"cfl_factor", false, KeyType::Number},
                  {"max_steps", false, KeyType::Integer},
                  {"blowup_threshold", false, KeyType::Number},
                  {"store_every", false, KeyType::Integer},
                  {"dt_max", false, KeyType::Number}});
    ts.t_end = j.at("t_end").get<double>();
    ts.cfl_factor = num_or(j, "cfl_factor", ts.cfl_factor);
    if (j.contains("max_steps")) ts.max_steps = j.at("max_steps").get<long>();
    ts.blowup_threshold = num_or(j, "blowup_threshold", ts.blowup_threshold);
    if (j.contains("store_every")) ts.store_every = j.at("store_every").get<int>();
    if (j.contains("dt_max")) ts.dt_max = j.at("dt_max").get<double>();
    return ts;
}

BoundarySpec parse_boundary(const json& cfg, const std::string& path) {
    if (!cfg.contains("boundary")) return NeumannZero{};
    const json& j = cfg.at("boundary");
    check_object(j, path + ".boundary",
                 {{"kind", true, KeyType::String},
                  {"Ua", false, KeyType::Number},
                  {"Ub", false, KeyType::Number},
                  {"Va", false, KeyType::Number},
                  {"Vb", false, KeyType::Number},
                  {"family", false, KeyType::Object}});
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "neumann_zero") return NeumannZero{};
    if (kind == "periodic") return Periodic{};
    if (kind == "dirichlet_constant")
        return DirichletConstant{num_or(j, "Ua", 0), num_or(j, "Ub", 0),
                                 num_or(j, "Va", 0), num_or(j, "Vb", 0)};
    if (kind == "dirichlet_family") {
        if (!j.contains("family"))
            throw ConfigError(path + ".boundary.family: missing key");
        return DirichletFromFamily{
            field_of(parse_family(j.at("family"), path + ".boundary.family"))};
    }
    throw ConfigError(path + ".boundary.kind: unknown boundary kind " + kind);
}

FieldState parse_initial(const json& cfg, const Grid1D& grid, const std::string& path) {
    if (!cfg.contains("initial"))
        throw ConfigError(path + ".initial: missing key");
    const json& j = cfg.at("initial");
    check_object(j, path + ".initial",
                 {{"kind", true, KeyType::String},
                  {"family", false, KeyType::Object},
                  {"u0", false, KeyType::Number},
                  {"v0", false, KeyType::Number},
                  {"amplitude", false, KeyType::Number},
                  {"center", false, KeyType::Number},
                  {"width", false, KeyType::Number},
                  {"base_u", false, KeyType::Number},
                  {"base_v", false, KeyType::Number}});
    const std::string kind = j.at("kind").get<std::string>();
    FieldState s;
    s.t = 0;
    s.u.resize(grid.n);
    s.v.resize(grid.n);
    if (kind == "family_trace") {
        if (!j.contains("family"))
            throw ConfigError(path + ".initial.family: missing key");
        return family_trace(parse_family(j.at("family"), path + ".initial.family"),
                            grid, 0.0);
    }
    if (kind == "constant") {
        s.u.setConstant(num_or(j, "u0", 0));
        s.v.setConstant(num_or(j, "v0", 0));
        return s;
    }
    if (kind == "gaussian") {
        const double amp = num_or(j, "amplitude", 1);
        const double ctr = num_or(j, "center", 0.5 * (grid.x_min + grid.x_max));
        const double wid = num_or(j, "width", 0.1 * (grid.x_max - grid.x_min));
        const double bu = num_or(j, "base_u", 0), bv = num_or(j, "base_v", 0);
        for (int i = 0; i < grid.n; ++i) {
            const double z = (grid.x(i) - ctr) / wid;
            s.u[i] = bu + amp * std::exp(-z * z);
            s.v[i] = bv + amp * std::exp(-z * z);
        }
        return s;
    }
    if (kind == "cosine_bump") {
        // zero slope at both interval ends (mirror-compatible)
        const double amp = num_or(j, "amplitude", 1);
        const double bu = num_or(j, "base_u", 0), bv = num_or(j, "base_v", 0);
        const double L = grid.x_max - grid.x_min;
        const double mid = 0.5 * (grid.x_min + grid.x_max);
        for (int i = 0; i < grid.n; ++i) {
            const double c = std::cos(2.0 * M_PI * (grid.x(i) - mid) / L);
            s.u[i] = bu + 0.5 * amp * (1.0 + c);
            s.v[i] = bv + 0.5 * amp * (1.0 + c);
        }
        return s;
    }
    throw ConfigError(path + ".initial.kind: unknown initial kind " + kind);
}

// ----------------------------------------------------------------- output
struct Output {
    std::string csv;   // empty when the command has no CSV form
    json meta;         // JSON form / sidecar
};

void deliver(const Output& o, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << o.meta.dump(2) << "\n";
        return;
    }
    const bool csv = out_path.size() > 4 &&
                     out_path.compare(out_path.size() - 4, 4, ".csv") == 0;
    if (csv && !o.csv.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + out_path);
        f << o.csv;
        const std::string sidecar =
            out_path.substr(0, out_path.size() - 4) + ".json";
        std::ofstream s(sidecar, std::ios::binary);
        s << o.meta.dump(2) << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + out_path);
        f << o.meta.dump(2) << "\n";
    }
}

// linked operator constants for the paper-paired (operator, family) checks
OperatorConstants linked_constants(OperatorKind kind, const SolutionFamily& fam,
                                   const OperatorConstants& given) {
    OperatorConstants c = given;
    switch (kind) {
        case OperatorKind::Q11_0:
            c.alpha = fam.c.alpha;
            if (fam.tag == FamilyTag::Case9_Exp) {
                c.f_alpha1 = 0;
                c.f_alpha2 = fam.c.C1 * fam.c.C1 *
                             (fam.c.alpha - fam.params.a1 - 0.25);
            } else {
                c.f_alpha1 = 0;
                c.f_alpha2 = 0;
            }
            break;
        case OperatorKind::Q11:
            // the family's f-constants enter the operator scaled by -alpha0
            if (c.alpha0 == 0.0) c.alpha0 = 1.0;
            c.f_alpha1 = -c.alpha0 * fam.c.f_alpha1;
            c.f_alpha2 = -c.alpha0 * fam.c.f_alpha2;
            break;
        default:
            break;
    }
    return c;
}

// ----------------------------------------------------------------- commands
int cmd_verify_determining(const json& cfg, const std::string& out_path,
                           std::ostream& out) {
    check_object(cfg, "$",
                 {{"operator", true, KeyType::Object},
                  {"sampling", false, KeyType::Object},
                  {"tolerance", false, KeyType::Number}});
    const SymmetryOperator op = parse_operator(cfg.at("operator"), "$.operator");
    const SamplingSpec spec = parse_sampling(cfg, "$");
    const double tol = num_or(cfg, "tolerance", 1e-9);
    const DeterminingResult res = determining_residual(op, spec, tol);
    Output o;
    o.csv = residual_report_csv(res.report);
    o.meta = residual_report_json(res.report);
    o.meta["operator"] = operator_name(op.kind);
    o.meta["case_id"] = op.case_id;
    if (res.ambiguity)
        o.meta["ambiguity_report"] = ambiguity_report_json(*res.ambiguity);
    deliver(o, out_path, out);
    return res.report.pass ? 0 : 1;
}

int cmd_verify_solution(const json& cfg, const std::string& out_path,
                        std::ostream& out) {
    check_object(cfg, "$",
                 {{"family", true, KeyType::Object},
                  {"system", false, KeyType::Object},
                  {"sampling", false, KeyType::Object},
                  {"tolerance", false, KeyType::Number}});
    const SolutionFamily fam = parse_family(cfg.at("family"), "$.family");
    const SktParams p = cfg.contains("system")
                            ? params_from_json(cfg.at("system"), "$.system")
                            : fam.params;
    const SamplingSpec spec = parse_sampling(cfg, "$");
    const double tol = num_or(cfg, "tolerance", 1e-8);
    const ResidualReport rep = verify_family(p, fam, spec, tol);
    Output o;
    o.csv = residual_report_csv(rep);
    o.meta = residual_report_json(rep);
    o.meta["family"] = family_name(fam.tag);
    deliver(o, out_path, out);
    return rep.pass ? 0 : 1;
}

int cmd_verify_surface(const json& cfg, const std::string& out_path,
                       std::ostream& out) {
    check_object(cfg, "$",
                 {{"operator", true, KeyType::Object},
                  {"family", true, KeyType::Object},
                  {"link_constants", false, KeyType::Boolean},
                  {"sampling", false, KeyType::Object},
                  {"tolerance", false, KeyType::Number}});
    const json& opj = cfg.at("operator");
    check_object(opj, "$.operator",
                 {{"kind", true, KeyType::String},
                  {"case_id", false, KeyType::Integer},
                  {"constants", false, KeyType::Object}});
    const SolutionFamily fam = parse_family(cfg.at("family"), "$.family");
    const OperatorKind kind = operator_from_name(opj.at("kind").get<std::string>());
    OperatorConstants oc = parse_operator_constants(opj, "$.operator");
    const bool link = !cfg.contains("link_constants") ||
                      cfg.at("link_constants").get<bool>();
    if (link) oc = linked_constants(kind, fam, oc);

    const SamplingSpec spec = parse_sampling(cfg, "$");
    const double tol = num_or(cfg, "tolerance", 1e-8);

    SymmetryOperator op;
    JetField field = field_of(fam);
    if (fam.tag == FamilyTag::Polymer49 && kind == OperatorKind::Q6) {
        // check in the unit cross-diffusion frame: map the family through the
        // polymer scaling and bind the operator to the scaled system
        const TransformResult tr =
            apply_named_transform(TransformId::Scale43, fam.params);
        field = mapped_field(field, tr.map);
        op = make_operator(kind, 5, tr.params, oc);
    } else {
        const int case_id = opj.contains("case_id") ? opj.at("case_id").get<int>()
                                                    : default_case_for(kind);
        op = make_operator(kind, case_id, fam.params, oc);
    }
    const ResidualReport rep = invariant_surface_residual(op, field, spec, tol);
    Output o;
    o.csv = residual_report_csv(rep);
    o.meta = residual_report_json(rep);
    o.meta["operator"] = operator_name(kind);
    o.meta["family"] = family_name(fam.tag);
    deliver(o, out_path, out);
    return rep.pass ? 0 : 1;
}

int cmd_verify_ode(const json& cfg, const std::string& out_path, std::ostream& out) {
    check_object(cfg, "$",
                 {{"system_id", true, KeyType::String},
                  {"profiles", true, KeyType::Object},
                  {"x", false, KeyType::Object},
                  {"tolerance", false, KeyType::Number}});
    const ReducedSystemId id =
        reduced_system_from_name(cfg.at("system_id").get<std::string>());
    const json& pj = cfg.at("profiles");
    check_object(pj, "$.profiles",
                 {{"source", true, KeyType::String},
                  {"params", false, KeyType::Object},
                  {"a1", false, KeyType::Number},
                  {"alpha", false, KeyType::Number},
                  {"alpha0", false, KeyType::Number},
                  {"d1", false, KeyType::Number},
                  {"d2", false, KeyType::Number},
                  {"sign", false, KeyType::String},
                  {"C1", false, KeyType::Number},
                  {"C2", false, KeyType::Number},
                  {"C3", false, KeyType::Number},
                  {"C4", false, KeyType::Number}});
    const std::string source = pj.at("source").get<std::string>();

    ReducedOdeInputs in;
    in.alpha = num_or(pj, "alpha", 0);
    in.alpha0 = num_or(pj, "alpha0", 0);
    const double C1 = num_or(pj, "C1", 0), C2 = num_or(pj, "C2", 0);
    const double C3 = num_or(pj, "C3", 0), C4 = num_or(pj, "C4", 0);

    if (source == "case1") {
        if (!pj.contains("params"))
            throw ConfigError("$.profiles.params: missing key");
        in.params = params_from_json(pj.at("params"), "$.profiles.params");
        const Case1Profiles prof = build_case1_profiles(in.params, C1, C2, C3, C4);
        in.phi = prof.phi;
        in.psi = prof.psi;
    } else if (source == "polymer48") {
        const double d1 = num_or(pj, "d1", 1), d2 = num_or(pj, "d2", 1);
        SignChoice sign = SignChoice::Plus;
        if (pj.contains("sign") && pj.at("sign").get<std::string>() == "minus")
            sign = SignChoice::Minus;
        const PolymerProfiles prof = polymer_profiles48(d1, d2, C1, C2, C3, C4, sign);
        in.phi = prof.phi;
        in.psi = prof.psi;
        in.params.d1 = d1;
        in.params.d2 = d2;
    } else if (source == "ode34_special") {
        const double a1 = num_or(pj, "a1", 0);
        const Ode34SpecialProfiles prof =
            ode34_special_profiles(a1, in.alpha, C1, C2, C3);
        in.phi = prof.phi;
        in.psi = prof.psi;
        in.f = prof.f;
        in.params.a1 = a1;
        in.params.b2 = 1;
        in.params.c1 = 1;
    } else if (source == "phi_zero") {
        const double a1 = num_or(pj, "a1", 0);
        in.phi = profile_from([](double) { return jconst(0.0); }, "phi = 0");
        in.psi = profile_from(
            [C1, C2](double x) {
                return C1 * jexp(jspace(x)) + C2 * jexp(-1.0 * jspace(x));
            },
            "psi = C1 e^x + C2 e^-x");
        in.params.a1 = a1;
        in.params.b2 = 1;
        in.params.c1 = 1;
    } else {
        throw ConfigError("$.profiles.source: unknown source " + source);
    }

    double lo = -2, hi = 2;
    int count = 81;
    if (cfg.contains("x")) {
        const json& xj = cfg.at("x");
        check_object(xj, "$.x",
                     {{"lo", true, KeyType::Number},
                      {"hi", true, KeyType::Number},
                      {"count", false, KeyType::Integer}});
        lo = xj.at("lo").get<double>();
        hi = xj.at("hi").get<double>();
        if (xj.contains("count")) count = xj.at("count").get<int>();
    }
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * i / (count - 1);

    const double tol = num_or(cfg, "tolerance", 1e-8);
    const ResidualReport rep = reduced_ode_residual(id, in, xs, tol);
    Output o;
    o.csv = residual_report_csv(rep);
    o.meta = residual_report_json(rep);
    o.meta["system_id"] = reduced_system_name(id);
    deliver(o, out_path, out);
    return rep.pass ? 0 : 1;
}

int cmd_simulate(const json& cfg, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    check_object(cfg, "$",
                 {{"system", true, KeyType::Object},
                  {"grid", true, KeyType::Object},
                  {"time", true, KeyType::Object},
                  {"boundary", false, KeyType::Object},
                  {"initial", true, KeyType::Object}});
    const SktParams p = params_from_json(cfg.at("system"), "$.system");
    const ValidationResult vr = validate_params(p);
    if (!vr.ok) {
        std::string msg = "$.system: coefficient restrictions violated:";
        for (Restriction r : vr.violated)
            msg += std::string(" ") + restriction_text(r) + ";";
        for (const auto& f : vr.nonfinite_fields) msg += " nonfinite " + f + ";";
        throw ConfigError(msg);
    }
    const Grid1D grid = parse_grid(cfg.at("grid"), "$.grid");
    const TimeSpec ts = parse_time(cfg, "$");
    const BoundarySpec bc = parse_boundary(cfg, "$");
    const FieldState init = parse_initial(cfg, grid, "$");
    const Trajectory traj = integrate(p, init, bc, ts, grid);
    Output o;
    o.csv = trajectory_csv(traj);
    o.meta = trajectory_sidecar_json(traj, p);
    if (out_path.empty()) {
        err << o.meta.dump(2) << "\n";
        out << o.csv;
    } else {
        deliver(o, out_path, out);
    }
    return 0;  // blow-up is a normal termination mode
}

int cmd_converge(const json& cfg, const std::string& out_path, std::ostream& out) {
    check_object(cfg, "$",
                 {{"system", false, KeyType::Object},
                  {"family", true, KeyType::Object},
                  {"grids", true, KeyType::Array},
                  {"x_min", true, KeyType::Number},
                  {"x_max", true, KeyType::Number},
                  {"t_end", true, KeyType::Number},
                  {"time", false, KeyType::Object},
                  {"first_order_boundary", false, KeyType::Boolean}});
    const SolutionFamily fam = parse_family(cfg.at("family"), "$.family");
    const SktParams p = cfg.contains("system")
                            ? params_from_json(cfg.at("system"), "$.system")
                            : fam.params;
    std::vector<Grid1D> grids;
    for (const auto& nj : cfg.at("grids")) {
        if (!nj.is_number_integer())
            throw ConfigError("$.grids: expected node counts");
        grids.push_back(make_grid(cfg.at("x_min").get<double>(),
                                  cfg.at("x_max").get<double>(), nj.get<int>()));
    }
    TimeSpec ts;
    if (cfg.contains("time")) ts = parse_time(cfg, "$");
    SolverOptions opt;
    if (cfg.contains("first_order_boundary"))
        opt.first_order_boundary = cfg.at("first_order_boundary").get<bool>();
    const ConvergenceReport rep =
        convergence_study(p, fam, grids, cfg.at("t_end").get<double>(), ts, opt);
    Output o;
    o.meta = convergence_report_json(rep);
    std::string csv = "n,h,linf,l2\n";
    for (const auto& l : rep.levels)
        csv += std::to_string(l.n) + "," + format_g17(l.h) + "," +
               format_g17(l.linf) + "," + format_g17(l.l2) + "\n";
    o.csv = csv;
    deliver(o, out_path, out);
    return (rep.exact || !rep.flagged) ? 0 : 1;
}

int cmd_scenario(const json& cfg, const std::string& out_path, std::ostream& out) {
    check_object(cfg, "$",
                 {{"system", true, KeyType::Object},
                  {"probe", false, KeyType::Object}});
    const SktParams p = params_from_json(cfg.at("system"), "$.system");
    const ScenarioReport rep = classify_scenario(p);
    Output o;
    o.meta = scenario_report_json(rep);
    bool pass = true;
    if (cfg.contains("probe")) {
        const json& pr = cfg.at("probe");
        check_object(pr, "$.probe",
                     {{"family", true, KeyType::Object},
                      {"T", false, KeyType::Number},
                      {"x", false, KeyType::Array},
                      {"nx", false, KeyType::Integer},
                      {"nt", false, KeyType::Integer}});
        const SolutionFamily fam = parse_family(pr.at("family"), "$.probe.family");
        ProbeSpec spec;
        spec.T = num_or(pr, "T", spec.T);
        if (pr.contains("x")) {
            const json& xr = pr.at("x");
            if (!xr.is_array() || xr.size() != 2)
                throw ConfigError("$.probe.x: expected [lo, hi]");
            spec.x = {xr[0].get<double>(), xr[1].get<double>()};
        }
        if (pr.contains("nx")) spec.nx = pr.at("nx").get<int>();
        if (pr.contains("nt")) spec.nt = pr.at("nt").get<int>();
        const AsymptoticsReport probe = asymptotic_probe(p, fam, spec);
        o.meta["probe"] = asymptotics_report_json(probe);
        pass = probe.agrees_with_classification;
    }
    deliver(o, out_path, out);
    return pass ? 0 : 1;
}

int cmd_conserve(const json& cfg, const std::string& out_path, std::ostream& out) {
    check_object(cfg, "$",
                 {{"system", true, KeyType::Object},
                  {"species", true, KeyType::String},
                  {"sign", true, KeyType::String},
                  {"grid", true, KeyType::Object},
                  {"time", true, KeyType::Object},
                  {"boundary", false, KeyType::Object},
                  {"initial", true, KeyType::Object},
                  {"refine", false, KeyType::Boolean}});
    const SktParams p = params_from_json(cfg.at("system"), "$.system");
    const std::string sp = cfg.at("species").get<std::string>();
    if (sp != "u" && sp != "v")
        throw ConfigError("$.species: expected \"u\" or \"v\"");
    const std::string sg = cfg.at("sign").get<std::string>();
    if (sg != "plus" && sg != "minus")
        throw ConfigError("$.sign: expected \"plus\" or \"minus\"");
    const ConservedWeight w = conserved_weight(
        p, sp == "u" ? Species::U : Species::V, sg == "plus" ? 1 : -1);

    const Grid1D grid = parse_grid(cfg.at("grid"), "$.grid");
    const TimeSpec ts = parse_time(cfg, "$");
    const BoundarySpec bc = parse_boundary(cfg, "$");

    auto run_level = [&](const Grid1D& g, const TimeSpec& t) {
        const FieldState init = parse_initial(cfg, g, "$");
        const Trajectory traj = integrate(p, init, bc, t, g);
        return conservation_check(p, traj, w);
    };
    const ConservationReport rep = run_level(grid, ts);
    Output o;
    o.csv = conservation_report_csv(rep);
    o.meta = conservation_report_json(rep);
    bool pass = true;
    if (cfg.contains("refine") && cfg.at("refine").get<bool>()) {
        if (!ts.dt_max)
            throw ConfigError("$.time.dt_max: required when refine is set");
        Grid1D fine = grid;
        fine.n = 2 * grid.n - 1;  // halves h
        TimeSpec fts = ts;
        fts.dt_max = *ts.dt_max / 2.0;
        const ConservationReport frep = run_level(fine, fts);
        const double ratio = rep.max_defect / frep.max_defect;
        o.meta["refined"] = conservation_report_json(frep);
        o.meta["defect_ratio"] = ratio;
        pass = ratio >= 3.0 && ratio <= 5.0;
        o.meta["ratio_in_band"] = pass;
    }
    deliver(o, out_path, out);
    return pass ? 0 : 1;
}

int cmd_list_catalog(const std::string& out_path, std::ostream& out) {
    json cases = json::array();
    for (const auto& c : table1_cases()) {
        json ops = json::array();
        for (OperatorKind k : c.operators) ops.push_back(operator_name(k));
        cases.push_back({{"case_id", c.case_id},
                         {"description", c.description},
                         {"operators", ops}});
    }
    json fams = json::array();
    for (FamilyTag t : {FamilyTag::Case1_A2NonZero, FamilyTag::Case1_A2Zero,
                        FamilyTag::Case1_Explicit30, FamilyTag::Case9_F0,
                        FamilyTag::Case9_Exp, FamilyTag::Case9_Phi0,
                        FamilyTag::Polymer49})
        fams.push_back(family_name(t));
    json transforms = json::array();
    for (TransformId id : {TransformId::Reduce24To23, TransformId::Reduce39To31,
                           TransformId::Scale43, TransformId::Scale76,
                           TransformId::Table2Case2, TransformId::Table2Case5,
                           TransformId::Table2Case7, TransformId::Table2Case8,
                           TransformId::Table2Case10, TransformId::Swap50})
        transforms.push_back(transform_name(id));
    Output o;
    o.meta = {{"cases", cases}, {"families", fams}, {"transforms", transforms}};
    deliver(o, out_path, out);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    static const char* usage =
        "usage: skt <subcommand> [--config <path>] [--out <path>]\n"
        "subcommands: verify-determining verify-solution verify-surface\n"
        "             verify-ode simulate converge scenario conserve list-catalog\n";
    try {
        if (args.empty()) throw ConfigError("missing subcommand");
        const std::string cmd = args[0];
        std::string config_path, out_path;
        for (std::size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size())
                config_path = args[++i];
            else if (args[i] == "--out" && i + 1 < args.size())
                out_path = args[++i];
            else
                throw ConfigError("unknown argument: " + args[i]);
        }
        if (cmd == "list-catalog") return cmd_list_catalog(out_path, out);

        if (config_path.empty()) throw ConfigError("--config <path> is required");
        std::ifstream f(config_path);
        if (!f) throw ConfigError("cannot read config file " + config_path);
        json cfg;
        try {
            cfg = json::parse(f);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }

        if (cmd == "verify-determining")
            return cmd_verify_determining(cfg, out_path, out);
        if (cmd == "verify-solution") return cmd_verify_solution(cfg, out_path, out);
        if (cmd == "verify-surface") return cmd_verify_surface(cfg, out_path, out);
        if (cmd == "verify-ode") return cmd_verify_ode(cfg, out_path, out);
        if (cmd == "simulate") return cmd_simulate(cfg, out_path, out, err);
        if (cmd == "converge") return cmd_converge(cfg, out_path, out);
        if (cmd == "scenario") return cmd_scenario(cfg, out_path, out);
        if (cmd == "conserve") return cmd_conserve(cfg, out_path, out);
        err << usage;
        throw ConfigError("unknown subcommand: " + cmd);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const EmptySampleError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace skt
