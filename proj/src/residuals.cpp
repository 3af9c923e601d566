#include "skt/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "skt/errors.hpp"
#include "skt/scenario.hpp"

namespace skt {

const EquationResidual* ResidualReport::find(const std::string& id) const {
    for (const auto& e : equations)
        if (e.equation_id == id) return &e;
    return nullptr;
}

double ResidualReport::max_over_equations() const {
    double m = 0;
    for (const auto& e : equations) m = std::max(m, e.max_abs);
    return m;
}

PdeResidual pde_residual(const SktParams& p, const Jet2& j) {
    const ReactionTerms f = reaction_terms(p, j.u, j.v);
    const double s1 = (p.d1 + p.d12 * j.v) * j.u_xx + 2.0 * p.d12 * j.v_x * j.u_x +
                      p.d12 * j.v_xx * j.u - j.u_t + f.f1;
    const double s2 = (p.d2 + p.d21 * j.u) * j.v_xx + 2.0 * p.d21 * j.u_x * j.v_x +
                      p.d21 * j.u_xx * j.v - j.v_t + f.f2;
    return {s1, s2};
}

namespace {

// Fixed-width uniform draw; avoids std::uniform_real_distribution so that
// identical seeds give identical samples on any standard library.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
    double uniform(const SamplingSpec::Range& r) {
        const double u01 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return r.lo + (r.hi - r.lo) * u01;
    }

  private:
    std::mt19937_64 gen_;
};

struct Accumulator {
    EquationResidual eq;
    double sum_abs = 0;

    explicit Accumulator(std::string id) { eq.equation_id = std::move(id); }

    void add(double value, double t, double x, double u, double v) {
        const double a = std::abs(value);
        sum_abs += a;
        ++eq.samples;
        if (a >= eq.max_abs) {
            eq.max_abs = a;
            eq.worst_t = t;
            eq.worst_x = x;
            eq.worst_u = u;
            eq.worst_v = v;
        }
    }

    EquationResidual finish(double tol) {
        eq.mean_abs = eq.samples ? sum_abs / eq.samples : 0.0;
        eq.pass = eq.max_abs <= tol;
        return eq;
    }
};

ResidualReport finish_report(std::vector<Accumulator>& accs, double tol,
                             long requested, long evaluated, long skipped) {
    ResidualReport r;
    r.tolerance = tol;
    r.requested = requested;
    r.evaluated = evaluated;
    r.skipped = skipped;
    r.pass = true;
    for (auto& a : accs) {
        r.equations.push_back(a.finish(tol));
        r.pass = r.pass && r.equations.back().pass;
    }
    return r;
}

}  // namespace

ResidualReport verify_family(const SktParams& p, const JetField& field,
                             const SamplingSpec& spec, double tol) {
    SampleRng rng(spec.seed);
    std::vector<Accumulator> accs;
    accs.emplace_back("S1");
    accs.emplace_back("S2");
    long evaluated = 0, skipped = 0;
    for (int i = 0; i < spec.count; ++i) {
        const double t = rng.uniform(spec.t);
        const double x = rng.uniform(spec.x);
        try {
            const Jet2 j = field.jet(t, x);
            const PdeResidual s = pde_residual(p, j);
            accs[0].add(s.s1, t, x, j.u, j.v);
            accs[1].add(s.s2, t, x, j.u, j.v);
            ++evaluated;
        } catch (const DomainError&) {
            ++skipped;
        }
    }
    if (evaluated == 0)
        throw EmptySampleError("verify_family: every sample point was inadmissible");
    return finish_report(accs, tol, spec.count, evaluated, skipped);
}

ResidualReport verify_family(const SktParams& p, const SolutionFamily& fam,
                             const SamplingSpec& spec, double tol) {
    return verify_family(p, field_of(fam), spec, tol);
}

ResidualReport invariant_surface_residual(const SymmetryOperator& op,
                                          const JetField& field,
                                          const SamplingSpec& spec, double tol) {
    SampleRng rng(spec.seed);
    std::vector<Accumulator> accs;
    accs.emplace_back("Q(u)");
    accs.emplace_back("Q(v)");
    long evaluated = 0, skipped = 0;
    for (int i = 0; i < spec.count; ++i) {
        const double t = rng.uniform(spec.t);
        const double x = rng.uniform(spec.x);
        try {
            const Jet2 j = field.jet(t, x);
            const CoefficientBundle b = operator_coefficients(op, t, x, j.u, j.v);
            const double qu = j.u_t + b.xi * j.u_x - b.eta1;
            const double qv = j.v_t + b.xi * j.v_x - b.eta2;
            accs[0].add(qu, t, x, j.u, j.v);
            accs[1].add(qv, t, x, j.u, j.v);
            ++evaluated;
        } catch (const DomainError&) {
            ++skipped;
        }
    }
    if (evaluated == 0)
        throw EmptySampleError(
            "invariant_surface_residual: every sample point was inadmissible");
    return finish_report(accs, tol, spec.count, evaluated, skipped);
}

DeterminingContext determining_context(const SktParams& p, double u, double v,
                                       double eta1, double eta2) {
    DeterminingContext c;
    c.D = p.d1 * p.d2 + p.d1 * p.d21 * u + p.d2 * p.d12 * v;
    const ReactionTerms f = reaction_terms(p, u, v);
    c.F1 = f.f1;
    c.F2 = f.f2;
    c.Delta = p.d12 * (c.F2 - eta2) - p.d21 * (c.F1 - eta1);
    return c;
}

const std::array<const char*, kDeterminingEquationCount>& determining_equation_ids() {
    static const std::array<const char*, kDeterminingEquationCount> ids = {
        "eq9a", "eq9b", "eq10a", "eq10b", "eq11a", "eq11b",
        "eq12", "eq13", "eq14", "eq15", "eq16", "eq17"};
    return ids;
}

namespace {

double sum_terms(const std::vector<TermValue>& terms) {
    double s = 0;
    for (const auto& t : terms) s += t.value;
    return s;
}

std::vector<TermValue> eq16_terms(const SktParams& p, const CoefficientBundle& b,
                                  double u, double v, const DeterminingContext& c) {
    const double F1u = p.a1 - 2.0 * p.b1 * u - p.c1 * v;
    const double D = c.D, Dl = c.Delta;
    return {
        {"2D(eta1-F1)xi_x", 2.0 * D * (b.eta1 - c.F1) * b.xi_x},
        {"D(eta1_t - (d1+d12 v)eta1_xx - d12 u eta2_xx)",
         D * (b.eta1_t - (p.d1 + p.d12 * v) * b.eta1_xx - p.d12 * u * b.eta2_xx)},
        {"[d1 d21 u eta1 + (d1+d12 v)(d2 F1 - u Delta)] eta1_u",
         (p.d1 * p.d21 * u * b.eta1 +
          (p.d1 + p.d12 * v) * (p.d2 * c.F1 - u * Dl)) * b.eta1_u},
        {"[D eta2 + (d1+d12 v)(d1(F2-eta2) + v Delta)] eta1_v",
         (D * b.eta2 + (p.d1 + p.d12 * v) * (p.d1 * (c.F2 - b.eta2) + v * Dl)) *
             b.eta1_v},
        {"d12 u [d2(F1-eta1) - u Delta] eta2_u",
         p.d12 * u * (p.d2 * (c.F1 - b.eta1) - u * Dl) * b.eta2_u},
        {"d12 u [d1(F2-eta2) + v Delta] eta2_v",
         p.d12 * u * (p.d1 * (c.F2 - b.eta2) + v * Dl) * b.eta2_v},
        {"d12 (v eta1 - u eta2) Delta", p.d12 * (v * b.eta1 - u * b.eta2) * Dl},
        {"-d12 (d1+d2) eta1 eta2", -p.d12 * (p.d1 + p.d2) * b.eta1 * b.eta2},
        {"[d1 d12 F2 - D F1_u] eta1", (p.d1 * p.d12 * c.F2 - D * F1u) * b.eta1},
        {"[c1 u D + d2 d12 F1] eta2", (p.c1 * u * D + p.d2 * p.d12 * c.F1) * b.eta2},
    };
}

std::vector<TermValue> eq17_terms(const SktParams& p, const CoefficientBundle& b,
                                  double u, double v, const DeterminingContext& c) {
    const double F2v = p.a2 - p.b2 * u - 2.0 * p.c2 * v;
    const double D = c.D, Dl = c.Delta;
    return {
        {"2D(eta2-F2)xi_x", 2.0 * D * (b.eta2 - c.F2) * b.xi_x},
        {"D(eta2_t - d21 v eta1_xx - (d2+d21 u)eta2_xx)",
         D * (b.eta2_t - p.d21 * v * b.eta1_xx - (p.d2 + p.d21 * u) * b.eta2_xx)},
        {"d21 v [d2(F1-eta1) - u Delta] eta1_u",
         p.d21 * v * (p.d2 * (c.F1 - b.eta1) - u * Dl) * b.eta1_u},
        {"d21 v [d1(F2-eta2) + v Delta] eta1_v",
         p.d21 * v * (p.d1 * (c.F2 - b.eta2) + v * Dl) * b.eta1_v},
        {"[D eta1 + (d2+d21 u)(d2(F1-eta1) - u Delta)] eta2_u",
         (D * b.eta1 + (p.d2 + p.d21 * u) * (p.d2 * (c.F1 - b.eta1) - u * Dl)) *
             b.eta2_u},
        {"[d2 d12 v eta2 + (d2+d21 u)(d1 F2 + v Delta)] eta2_v",
         (p.d2 * p.d12 * v * b.eta2 +
          (p.d2 + p.d21 * u) * (p.d1 * c.F2 + v * Dl)) * b.eta2_v},
        {"d21 (v eta1 - u eta2) Delta", p.d21 * (v * b.eta1 - u * b.eta2) * Dl},
        {"-d21 (d1+d2) eta1 eta2", -p.d21 * (p.d1 + p.d2) * b.eta1 * b.eta2},
        {"[b2 v D + d1 d21 F2] eta1", (p.b2 * v * D + p.d1 * p.d21 * c.F2) * b.eta1},
        {"[d2 d21 F1 - D F2_v] eta2", (p.d2 * p.d21 * c.F1 - D * F2v) * b.eta2},
    };
}

}  // namespace

std::array<double, kDeterminingEquationCount> determining_equations(
    const SktParams& p, const CoefficientBundle& b, double u, double v,
    std::vector<TermValue>* terms16, std::vector<TermValue>* terms17) {
    const DeterminingContext c = determining_context(p, u, v, b.eta1, b.eta2);
    const double D = c.D;
    const double d1 = p.d1, d2 = p.d2, d12 = p.d12, d21 = p.d21;

    std::array<double, kDeterminingEquationCount> r{};
    // (9)
    r[0] = D * b.eta1_vv + 2.0 * d2 * d12 * b.eta1_v;
    r[1] = D * b.eta2_uu + 2.0 * d1 * d21 * b.eta2_u;
    // (10)
    r[2] = D * b.eta1_uu + 2.0 * d2 * d12 * b.eta2_u;
    r[3] = D * D * b.eta1_uv -
           (d2 * d12 * (d1 * d21 * b.eta1 + d2 * d12 * b.eta2) +
            D * (d1 * d21 * b.eta1_v - d2 * d12 * b.eta2_v));
    // (11)
    r[4] = D * b.eta2_vv + 2.0 * d1 * d21 * b.eta1_v;
    r[5] = D * D * b.eta2_uv -
           (d1 * d21 * (d1 * d21 * b.eta1 + d2 * d12 * b.eta2) -
            D * (d1 * d21 * b.eta1_u - d2 * d12 * b.eta2_u));
    // (12)
    r[6] = 2.0 * D * D * b.eta1_xu -
           ((d2 + d21 * u) * (d2 * d12 * b.xi * b.eta2 - D * b.xi_t -
                              2.0 * D * b.xi * b.xi_x) -
            d2 * d12 * d21 * v * b.xi * b.eta1 + D * D * b.xi_xx -
            d21 * v * D * b.xi * b.eta1_v + d12 * u * D * b.xi * b.eta2_u -
            2.0 * d2 * d12 * D * b.eta2_x);
    // (13)
    r[7] = 2.0 * D * b.eta1_xv -
           (d2 * d12 * (d1 + d12 * v) / D * b.xi * b.eta1 -
            d2 * d12 * d12 / D * u * b.xi * b.eta2 - 2.0 * d2 * d12 * b.eta1_x +
            (d1 - d2 - d21 * u + d12 * v) * b.xi * b.eta1_v +
            d12 * u * (b.xi_t + 2.0 * b.xi * b.xi_x - b.xi * b.eta1_u +
                       b.xi * b.eta2_v));
    // (14)
    r[8] = 2.0 * D * D * b.eta2_xv -
           ((d1 + d12 * v) * (d1 * d21 * b.xi * b.eta1 - D * b.xi_t -
                              2.0 * D * b.xi * b.xi_x) -
            d1 * d12 * d21 * u * b.xi * b.eta2 + D * D * b.xi_xx +
            d21 * v * D * b.xi * b.eta1_v - d12 * u * D * b.xi * b.eta2_u -
            2.0 * d1 * d21 * D * b.eta1_x);
    // (15)
    r[9] = 2.0 * D * b.eta2_xu -
           (-d1 * d21 * d21 / D * v * b.xi * b.eta1 +
            d1 * d21 * (d2 + d21 * u) / D * b.xi * b.eta2 -
            2.0 * d1 * d21 * b.eta2_x +
            (d2 - d1 + d21 * u - d12 * v) * b.xi * b.eta2_u +
            d21 * v * (b.xi_t + 2.0 * b.xi * b.xi_x + b.xi * b.eta1_u -
                       b.xi * b.eta2_v));
    // (16), (17): assembled from named terms
    const std::vector<TermValue> t16 = eq16_terms(p, b, u, v, c);
    const std::vector<TermValue> t17 = eq17_terms(p, b, u, v, c);
    r[10] = sum_terms(t16);
    r[11] = sum_terms(t17);
    if (terms16) *terms16 = t16;
    if (terms17) *terms17 = t17;
    return r;
}

DeterminingResult determining_residual(const SymmetryOperator& op,
                                       const SamplingSpec& spec, double tol) {
    SampleRng rng(spec.seed);
    std::vector<Accumulator> accs;
    for (const char* id : determining_equation_ids()) accs.emplace_back(id);

    const SktParams& p = op.params;
    long evaluated = 0, skipped = 0;
    for (int i = 0; i < spec.count; ++i) {
        const double t = rng.uniform(spec.t);
        const double x = rng.uniform(spec.x);
        const double u = rng.uniform(spec.u);
        const double v = rng.uniform(spec.v);
        const double D = p.d1 * p.d2 + p.d1 * p.d21 * u + p.d2 * p.d12 * v;
        const double D_scale = std::abs(p.d1 * p.d2) + std::abs(p.d1 * p.d21 * u) +
                               std::abs(p.d2 * p.d12 * v);
        if (std::abs(D) < 1e-6 * D_scale) {
            ++skipped;
            continue;
        }
        try {
            const CoefficientBundle b = operator_coefficients(op, t, x, u, v);
            const auto r = determining_equations(p, b, u, v);
            for (int k = 0; k < kDeterminingEquationCount; ++k)
                accs[k].add(r[k], t, x, u, v);
            ++evaluated;
        } catch (const DomainError&) {
            ++skipped;
        }
    }
    if (evaluated == 0)
        throw EmptySampleError("determining_residual: every sample point was skipped");
    if (evaluated < (9 * spec.count) / 10)
        throw Error("determining_residual: fewer than 90% of samples retained");

    DeterminingResult out;
    out.report = finish_report(accs, tol, spec.count, evaluated, skipped);

    std::vector<std::string> failing;
    for (const auto& e : out.report.equations)
        if (!e.pass) failing.push_back(e.equation_id);
    const bool only_1617 =
        !failing.empty() &&
        std::all_of(failing.begin(), failing.end(), [](const std::string& id) {
            return id == "eq16" || id == "eq17";
        });
    if (only_1617) {
        AmbiguityReport amb;
        amb.case_id = op.case_id;
        amb.op = op.kind;
        amb.failing_equations = failing;
        const EquationResidual* worst = out.report.find(failing.front());
        for (const auto& id : failing) {
            const EquationResidual* e = out.report.find(id);
            if (e->max_abs > worst->max_abs) worst = e;
        }
        amb.worst_t = worst->worst_t;
        amb.worst_x = worst->worst_x;
        amb.worst_u = worst->worst_u;
        amb.worst_v = worst->worst_v;
        const CoefficientBundle b = operator_coefficients(
            op, amb.worst_t, amb.worst_x, amb.worst_u, amb.worst_v);
        determining_equations(p, b, amb.worst_u, amb.worst_v, &amb.terms_eq16,
                              &amb.terms_eq17);
        out.ambiguity = amb;
    }
    return out;
}

const char* reduced_system_name(ReducedSystemId id) {
    switch (id) {
        case ReducedSystemId::Ode27: return "Ode27";
        case ReducedSystemId::Ode34: return "Ode34";
        case ReducedSystemId::Ode34Alpha0: return "Ode34Alpha0";
        case ReducedSystemId::Ode35: return "Ode35";
        case ReducedSystemId::Ode45: return "Ode45";
        case ReducedSystemId::OdeQ2: return "OdeQ2";
        case ReducedSystemId::OdeQ3_0: return "OdeQ3_0";
        case ReducedSystemId::OdeQ3_0A2Zero: return "OdeQ3_0A2Zero";
        case ReducedSystemId::OdeQ4: return "OdeQ4";
        case ReducedSystemId::OdeQ5: return "OdeQ5";
        case ReducedSystemId::OdeQ8: return "OdeQ8";
        case ReducedSystemId::OdeQ11_0: return "OdeQ11_0";
        case ReducedSystemId::OdeQ11_0Alpha0: return "OdeQ11_0Alpha0";
        case ReducedSystemId::OdeQ11: return "OdeQ11";
    }
    throw ConfigError("unknown reduced system id");
}

ReducedSystemId reduced_system_from_name(const std::string& name) {
    for (ReducedSystemId id :
         {ReducedSystemId::Ode27, ReducedSystemId::Ode34, ReducedSystemId::Ode34Alpha0,
          ReducedSystemId::Ode35, ReducedSystemId::Ode45, ReducedSystemId::OdeQ2,
          ReducedSystemId::OdeQ3_0, ReducedSystemId::OdeQ3_0A2Zero,
          ReducedSystemId::OdeQ4, ReducedSystemId::OdeQ5, ReducedSystemId::OdeQ8,
          ReducedSystemId::OdeQ11_0, ReducedSystemId::OdeQ11_0Alpha0,
          ReducedSystemId::OdeQ11})
        if (name == reduced_system_name(id)) return id;
    throw ConfigError("unknown reduced system name: " + name);
}

ResidualReport reduced_ode_residual(ReducedSystemId id, const ReducedOdeInputs& in,
                                    std::span<const double> xs, double tol) {
    const SktParams& p = in.params;
    auto fval = [&](double x) {
        return in.f ? in.f->value(x) : 0.0;
    };
    std::vector<Accumulator> accs;
    accs.emplace_back("phi_eq");
    accs.emplace_back("psi_eq");
    long evaluated = 0, skipped = 0;

    for (double x : xs) {
        double ph, php, phpp, ps, psp, pspp;
        try {
            ph = in.phi.value(x);
            php = in.phi.deriv(x);
            phpp = in.phi.deriv2(x);
            ps = in.psi.value(x);
            psp = in.psi.deriv(x);
            pspp = in.psi.deriv2(x);
        } catch (const DomainError&) {
            ++skipped;
            continue;
        }
        const bool needs_psi_div =
            id == ReducedSystemId::Ode34 || id == ReducedSystemId::Ode34Alpha0 ||
            id == ReducedSystemId::OdeQ3_0 || id == ReducedSystemId::OdeQ3_0A2Zero ||
            id == ReducedSystemId::OdeQ5 || id == ReducedSystemId::OdeQ11_0 ||
            id == ReducedSystemId::OdeQ11_0Alpha0 || id == ReducedSystemId::OdeQ11;
        if (needs_psi_div && std::abs(ps) < 1e-12) {
            ++skipped;
            continue;
        }
        double r1 = 0, r2 = 0;
        switch (id) {
            case ReducedSystemId::Ode27: {
                const double gam = case1_gamma(p);
                r1 = phpp - p.b2 * ph;
                r2 = pspp + (p.a1 - gam) * ps - (1.0 + p.c1 - p.b2 * p.d12) * ph;
                break;
            }
            case ReducedSystemId::Ode34:
                r1 = phpp - ph - fval(x) / ps;
                r2 = pspp + (p.a1 - in.alpha) * ps + fval(x) / ps;
                break;
            case ReducedSystemId::Ode34Alpha0:
                r1 = phpp - ph - fval(x) / ps;
                r2 = pspp + p.a1 * ps + fval(x) / ps;
                break;
            case ReducedSystemId::Ode35:
                r1 = phpp - ph;
                r2 = ps * pspp - ps * ps + in.alpha0 * (1.0 + p.a1) * ph;
                break;
            case ReducedSystemId::Ode45:
                r1 = (p.d1 * ph + p.d2 * ps) * phpp + 2.0 * p.d2 * php * psp -
                     p.d1 * ph * ph;
                r2 = (p.d1 * ph + p.d2 * ps) * pspp + 2.0 * p.d1 * php * psp -
                     p.d2 * ps * ps;
                break;
            case ReducedSystemId::OdeQ2:
                r1 = phpp - p.b2 * ph;
                r2 = pspp + ps * (p.a1 - p.b1 * ps);
                break;
            case ReducedSystemId::OdeQ3_0:
                r1 = phpp + ph * (p.a2 / ps - p.b2);
                r2 = pspp + ps * (p.a1 - p.b1 * ps) - p.a2 * ph / ps;
                break;
            case ReducedSystemId::OdeQ3_0A2Zero:
                r1 = phpp - p.b2 * ph - fval(x) / ps;
                r2 = pspp + ps * (p.a1 - p.b1 * ps) + fval(x) / ps;
                break;
            case ReducedSystemId::OdeQ4:
                r1 = phpp - p.b2 * ph;
                r2 = pspp + (p.a1 - in.alpha) * ps - (p.c1 - p.b2 * p.d12) * ph;
                break;
            case ReducedSystemId::OdeQ5: {
                const double mu = p.a2 + p.b2 * p.d2;
                const double sq_d = 2.0 * ps * psp;                    // (psi^2)'
                const double rat_d = (php * ps - ph * psp) / (ps * ps);  // (phi/psi)'
                r1 = phpp - p.b2 * ph;
                r2 = (p.d2 * ph + p.d1 * ps * ps) * pspp + p.d2 * sq_d * rat_d +
                     mu * ps * ps * ps;
                break;
            }
            case ReducedSystemId::OdeQ8:
                r1 = phpp - p.b2 * ph;
                r2 = pspp + (p.a1 - in.alpha) * ps;
                break;
            case ReducedSystemId::OdeQ11_0:
                r1 = phpp - p.b2 * ph - fval(x) / ps;
                r2 = pspp + (p.a1 - in.alpha) * ps + fval(x) / ps;
                break;
            case ReducedSystemId::OdeQ11_0Alpha0:
                r1 = phpp - p.b2 * ph - fval(x) / ps;
                r2 = pspp + p.a1 * ps + fval(x) / ps;
                break;
            case ReducedSystemId::OdeQ11: {
                const double beta = p.a1 + p.b2;
                r1 = phpp - p.b2 * ph;
                r2 = pspp - p.b2 * ps + in.alpha0 * beta * ph / ps;
                break;
            }
        }
        accs[0].add(r1, 0.0, x, ph, ps);
        accs[1].add(r2, 0.0, x, ph, ps);
        ++evaluated;
    }
    if (evaluated == 0)
        throw EmptySampleError("reduced_ode_residual: every sample point was skipped");
    return finish_report(accs, tol, static_cast<long>(xs.size()), evaluated, skipped);
}

}  // namespace skt
