#include "skt/solutions.hpp"

#include <cmath>
#include <sstream>

#include "skt/errors.hpp"
#include "skt/scenario.hpp"
#include "skt/catalog.hpp"

namespace skt {

const char* family_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::Case1_A2NonZero: return "Case1_A2NonZero";
        case FamilyTag::Case1_A2Zero: return "Case1_A2Zero";
        case FamilyTag::Case1_Explicit30: return "Case1_Explicit30";
        case FamilyTag::Case9_F0: return "Case9_F0";
        case FamilyTag::Case9_Exp: return "Case9_Exp";
        case FamilyTag::Case9_Phi0: return "Case9_Phi0";
        case FamilyTag::Polymer49: return "Polymer49";
    }
    return "?";
}

FamilyTag family_from_name(const std::string& name) {
    for (FamilyTag t : {FamilyTag::Case1_A2NonZero, FamilyTag::Case1_A2Zero,
                        FamilyTag::Case1_Explicit30, FamilyTag::Case9_F0,
                        FamilyTag::Case9_Exp, FamilyTag::Case9_Phi0,
                        FamilyTag::Polymer49})
        if (name == family_name(t)) return t;
    throw ConfigError("unknown family name: " + name);
}

SktParams PolymerParams::system() const {
    const double s = d3 * (d1 + d2);
    SktParams p;
    p.d1 = d1;
    p.d2 = d2;
    p.d12 = d3 * K;
    p.d21 = d3 * K;
    p.c1 = a3 * K;
    p.b2 = a3 * K;
    p.a1 = -a3 * d1 * d1 / s;
    p.a2 = -a3 * d2 * d2 / s;
    return p;
}

namespace {

[[noreturn]] void domain_fail(const char* what, double t, double x) {
    std::ostringstream os;
    os << what << " at (t=" << t << ", x=" << x << ")";
    throw DomainError(os.str());
}

PointJet guarded_div(const PointJet& num, const PointJet& den, double scale,
                     const char* what, double t, double x) {
    if (std::abs(den.v) <= 1e-30 * std::max(scale, 1e-300)) domain_fail(what, t, x);
    return num / den;
}

PointJet expx(double c, double x) { return jexp(c * jspace(x)); }
PointJet expt(double c, double t) { return jexp(c * jtime(t)); }

PointJet case1_phi_jet(double b2, double C1, double C2, double x) {
    if (b2 > 0) {
        const double r = std::sqrt(b2);
        return C1 * expx(r, x) + C2 * expx(-r, x);
    }
    if (b2 < 0) {
        const double r = std::sqrt(-b2);
        return C1 * jcos(r * jspace(x)) + C2 * jsin(r * jspace(x));
    }
    return jconst(C1) + C2 * jspace(x);
}

// psi of the a2 != 0 reduction: homogeneous branch by the sign of
// disc = a2 (1 + c1 - b2 d12) - b2, plus the particular part phi/a2.
PointJet case1_psi_jet(const SktParams& p, const FamilyConstants& c, double x) {
    const double disc = p.a2 * (1.0 + p.c1 - p.b2 * p.d12) - p.b2;
    const double kap = std::sqrt(std::abs(disc));
    PointJet hom;
    if (disc < 0)
        hom = c.C3 * expx(kap, x) + c.C4 * expx(-kap, x);
    else if (disc > 0)
        hom = c.C3 * jcos(kap * jspace(x)) + c.C4 * jsin(kap * jspace(x));
    else
        hom = jconst(c.C3) + c.C4 * jspace(x);
    return hom + case1_phi_jet(p.b2, c.C1, c.C2, x) / p.a2;
}

// psi of the a2 = 0 reduction.
PointJet case1_psi_a2zero_jet(const SktParams& p, const FamilyConstants& c, double x) {
    const double lam = 1.0 + p.c1 - p.b2 * p.d12;
    if (p.b2 > 0) {
        const double r = std::sqrt(p.b2);
        const PointJet dphi = r * (c.C1 * expx(r, x) - c.C2 * expx(-r, x));
        return c.C3 * expx(r, x) + c.C4 * expx(-r, x) +
               (lam / (2.0 * p.b2)) * jspace(x) * dphi;
    }
    if (p.b2 < 0) {
        const double r = std::sqrt(-p.b2);
        const PointJet dphi =
            r * (-c.C1 * jsin(r * jspace(x)) + c.C2 * jcos(r * jspace(x)));
        return c.C3 * jcos(r * jspace(x)) + c.C4 * jsin(r * jspace(x)) +
               (lam / (2.0 * p.b2)) * jspace(x) * dphi;
    }
    const PointJet X = jspace(x);
    return jconst(c.C3) + c.C4 * X +
           ((1.0 + p.c1) / 6.0) * X * X * (3.0 * c.C1 + c.C2 * X);
}

Jet2 jet_case1_a2nonzero(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const double gam = case1_gamma(p);
    const PointJet phi = case1_phi_jet(p.b2, fam.c.C1, fam.c.C2, x);
    const PointJet psi = case1_psi_jet(p, fam.c, x);
    const PointJet Ea = expt(p.a2, t);
    const PointJet W = p.a2 * psi + (Ea - 1.0) * phi;
    const double scale = std::abs(p.a2 * psi.v) + std::abs((Ea.v - 1.0) * phi.v);
    const PointJet u = W * expt(gam, t);
    const PointJet v = guarded_div(p.a2 * phi * Ea, W, scale,
                                   "ansatz denominator a2 psi + (e^{a2 t}-1) phi vanishes",
                                   t, x);
    return make_jet2(u, v);
}

Jet2 jet_case1_a2zero(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const PointJet phi = case1_phi_jet(p.b2, fam.c.C1, fam.c.C2, x);
    const PointJet psi = case1_psi_a2zero_jet(p, fam.c, x);
    const PointJet W = phi * jtime(t) + psi;
    const double scale = std::abs(phi.v * t) + std::abs(psi.v);
    const PointJet u = W * expt(p.a1 + p.b2, t);
    const PointJet v =
        guarded_div(phi, W, scale, "ansatz denominator phi t + psi vanishes", t, x);
    return make_jet2(u, v);
}

Jet2 jet_case1_explicit30(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const double gam = case1_gamma(p);
    const double kap = std::sqrt(p.a1 - gam);
    const PointJet phi = case1_phi_jet(p.b2, fam.c.C1, fam.c.C2, x);
    const PointJet wave =
        fam.c.C3 * expt(-p.a2, t) * jsin(kap * (jspace(x) + fam.c.x0));
    const PointJet den = phi + wave;
    const double scale = std::abs(phi.v) + std::abs(wave.v);
    const PointJet u = expt(gam + p.a2, t) * den;
    const PointJet v = guarded_div(p.a2 * phi, den, scale,
                                   "denominator phi + C3 e^{-a2 t} sin(...) vanishes",
                                   t, x);
    return make_jet2(u, v);
}

Jet2 jet_case9_f0(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const double kap = std::sqrt(p.a1 - fam.c.alpha);
    const PointJet psi =
        fam.c.C1 * jcos(kap * jspace(x)) + fam.c.C2 * jsin(kap * jspace(x));
    const PointJet phi = fam.c.C3 * expx(1.0, x) + fam.c.C4 * expx(-1.0, x);
    const double scale = std::abs(fam.c.C1) + std::abs(fam.c.C2);
    const PointJet u = psi * expt(fam.c.alpha, t);
    const PointJet v = guarded_div(phi, psi, scale, "profile psi vanishes", t, x);
    return make_jet2(u, v);
}

Jet2 jet_case9_exp(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const double al = fam.c.alpha;
    const double q = 1.0 + 4.0 * (p.a1 - al);
    const PointJet wave = fam.c.C1 * jexp(al * jtime(t) - 0.5 * jspace(x));
    const PointJet u = wave;
    const PointJet v = jconst(q / 3.0) - (q / (4.0 * al)) * wave +
                       fam.c.C2 * expx(-0.5, x) + fam.c.C3 * expx(1.5, x);
    return make_jet2(u, v);
}

Jet2 jet_case9_phi0(const SolutionFamily& fam, double t, double x) {
    const SktParams& p = fam.params;
    const PointJet psi = fam.c.C1 * expx(1.0, x) + fam.c.C2 * expx(-1.0, x);
    const PointJet f = fam.c.f_alpha1 * expx(1.0, x) + fam.c.f_alpha2 * expx(-1.0, x);
    const double scale = std::abs(fam.c.C1 * std::exp(x)) + std::abs(fam.c.C2 * std::exp(-x));
    const PointJet u = psi * expt(1.0 + p.a1, t);
    const PointJet v =
        guarded_div(f, psi, scale, "profile psi vanishes", t, x) - 1.0;
    return make_jet2(u, v);
}

Jet2 jet_polymer49(const SolutionFamily& fam, double t, double x) {
    const PolymerParams& q = *fam.poly;
    const double s = std::sqrt(q.a3 / q.d3);
    const double denom = q.d3 * (q.d1 + q.d2);
    const double mu = q.a3 * q.d1 * q.d2 / denom;
    const double sgn = fam.c.sign == SignChoice::Plus ? 1.0 : -1.0;
    const PointJet E = fam.c.C1 * expx(s, x) + fam.c.C2 * expx(-s, x);
    const PointJet rad = E * E + fam.c.C3 * expx(s, x) + fam.c.C4 * expx(-s, x);
    const double rad_scale =
        E.v * E.v + std::abs(fam.c.C3 * std::exp(s * x)) +
        std::abs(fam.c.C4 * std::exp(-s * x));
    if (rad.v <= 1e-30 * std::max(rad_scale, 1e-300))
        domain_fail("square-root argument nonpositive", t, x);
    const PointJet R = jsqrt(rad);
    const PointJet T = expt(mu, t);
    const PointJet u = q.d2 * (E + sgn * R) * T - q.d2 * q.d2 / (denom * q.K);
    const PointJet v = q.d1 * (-1.0 * E + sgn * R) * T - q.d1 * q.d1 / (denom * q.K);
    return make_jet2(u, v);
}

}  // namespace

SolutionFamily make_family(FamilyTag tag, const SktParams& p, FamilyConstants c) {
    if (!validate_params(p).ok)
        throw ShapeError("family system violates the coefficient restrictions");
    switch (tag) {
        case FamilyTag::Case1_A2NonZero:
            if (!is_system23_shape(p) || p.a2 == 0.0)
                throw ShapeError("Case1_A2NonZero needs the canonical b1=d2=0 frame with a2 != 0");
            break;
        case FamilyTag::Case1_A2Zero:
            if (!is_system23_shape(p) || p.a2 != 0.0)
                throw ShapeError("Case1_A2Zero needs the canonical b1=d2=0 frame with a2 = 0");
            break;
        case FamilyTag::Case1_Explicit30: {
            if (!is_system23_shape(p) || p.a2 == 0.0)
                throw ShapeError("Case1_Explicit30 needs the canonical b1=d2=0 frame with a2 != 0");
            if (p.b2 <= 0.0)
                throw ShapeError("Case1_Explicit30 needs b2 > 0");
            if (p.a1 - case1_gamma(p) <= 0.0)
                throw ShapeError("Case1_Explicit30 needs a2 (1 + c1 - b2 d12) - b2 > 0");
            break;
        }
        case FamilyTag::Case9_F0:
            if (!is_system31_shape(p))
                throw ShapeError("Case9_F0 needs the canonical one-parameter frame");
            if (p.a1 - c.alpha <= 0.0)
                throw ShapeError("Case9_F0 needs alpha < a1");
            break;
        case FamilyTag::Case9_Exp:
            if (!is_system31_shape(p))
                throw ShapeError("Case9_Exp needs the canonical one-parameter frame");
            if (c.alpha == 0.0) throw ShapeError("Case9_Exp needs alpha != 0");
            break;
        case FamilyTag::Case9_Phi0:
            if (!is_system31_shape(p))
                throw ShapeError("Case9_Phi0 needs the canonical one-parameter frame");
            if (c.C1 == 0.0 && c.C2 == 0.0)
                throw ShapeError("Case9_Phi0 needs C1, C2 not both zero");
            break;
        case FamilyTag::Polymer49:
            throw ConfigError("use make_polymer_family for Polymer49");
    }
    return SolutionFamily{tag, p, c, std::nullopt};
}

SolutionFamily make_polymer_family(const PolymerParams& pp, FamilyConstants c) {
    if (!(pp.K > 0 && pp.a3 > 0 && pp.d3 > 0 && pp.d1 > 0 && pp.d2 > 0))
        throw ShapeError("Polymer49 needs positive K, a3, d3, d1, d2");
    SolutionFamily fam;
    fam.tag = FamilyTag::Polymer49;
    fam.params = pp.system();
    fam.c = c;
    fam.poly = pp;
    return fam;
}

Jet2 eval_solution_jet(const SolutionFamily& fam, double t, double x) {
    switch (fam.tag) {
        case FamilyTag::Case1_A2NonZero: return jet_case1_a2nonzero(fam, t, x);
        case FamilyTag::Case1_A2Zero: return jet_case1_a2zero(fam, t, x);
        case FamilyTag::Case1_Explicit30: return jet_case1_explicit30(fam, t, x);
        case FamilyTag::Case9_F0: return jet_case9_f0(fam, t, x);
        case FamilyTag::Case9_Exp: return jet_case9_exp(fam, t, x);
        case FamilyTag::Case9_Phi0: return jet_case9_phi0(fam, t, x);
        case FamilyTag::Polymer49: return jet_polymer49(fam, t, x);
    }
    throw ConfigError("unknown family tag");
}

std::pair<double, double> eval_solution(const SolutionFamily& fam, double t, double x) {
    const Jet2 j = eval_solution_jet(fam, t, x);
    return {j.u, j.v};
}

JetField field_of(const SolutionFamily& fam) {
    return JetField{[fam](double t, double x) { return eval_solution_jet(fam, t, x); }};
}

JetField mapped_field(const JetField& src, const VarMap& m) {
    return JetField{[src, m](double t, double x) {
        const Jet2 j = src.jet(m.t_scale * t, m.x_scale * x);
        return map_jet(m, j);
    }};
}

JetField mixed_field(const JetField& u_from, const JetField& v_from) {
    return JetField{[u_from, v_from](double t, double x) {
        Jet2 ju = u_from.jet(t, x);
        const Jet2 jv = v_from.jet(t, x);
        ju.v = jv.v;
        ju.v_t = jv.v_t;
        ju.v_x = jv.v_x;
        ju.v_xx = jv.v_xx;
        return ju;
    }};
}

namespace {

void sample_denominator(const SolutionFamily& fam, Interval x,
                        AdmissibilityReport& r) {
    const int n = 201;
    const double times[] = {0.0, 0.5, 1.0, 2.0};
    for (double t : times) {
        for (int i = 0; i < n; ++i) {
            const double xi = x.lo + (x.hi - x.lo) * i / (n - 1);
            try {
                (void)eval_solution_jet(fam, t, xi);
            } catch (const DomainError& e) {
                r.admissible = false;
                r.violations.push_back(e.what());
                return;
            }
        }
    }
}

}  // namespace

AdmissibilityReport admissible_domain(const SolutionFamily& fam, Interval x) {
    AdmissibilityReport r;
    r.admissible = true;
    const FamilyConstants& c = fam.c;
    switch (fam.tag) {
        case FamilyTag::Case1_Explicit30: {
            if (c.C3 == 0.0) r.notes.push_back("C3 = 0: v is identically a2");
            if (c.C1 > 0.0 && c.C2 > 0.0) {
                if (!(std::abs(c.C3) < 2.0 * std::sqrt(c.C1 * c.C2))) {
                    r.admissible = false;
                    r.violations.push_back("|C3| < 2 sqrt(C1 C2) fails");
                }
            } else if (c.C1 * c.C2 == 0.0) {
                const bool right = std::abs(c.C3) < c.C1 && x.lo >= 0.0;
                const bool left = std::abs(c.C3) < c.C2 && x.hi <= 0.0;
                if (!right && !left) {
                    r.admissible = false;
                    r.violations.push_back(
                        "C1 C2 = 0 alternative (|C3| < C1, a >= 0 or |C3| < C2, b <= 0) fails");
                }
            } else {
                r.admissible = false;
                r.violations.push_back("C1 > 0, C2 > 0 (or C1 C2 = 0 alternative) fails");
            }
            break;
        }
        case FamilyTag::Case9_Exp: {
            const double q = 1.0 + 4.0 * (fam.params.a1 - c.alpha);
            if (!(c.alpha < 0.0)) { r.admissible = false; r.violations.push_back("alpha < 0 fails"); }
            if (!(c.C1 > 0.0)) { r.admissible = false; r.violations.push_back("C1 > 0 fails"); }
            if (c.C3 != 0.0) { r.admissible = false; r.violations.push_back("C3 = 0 fails"); }
            if (!(c.C2 + q / 3.0 > 0.0)) {
                r.admissible = false;
                r.violations.push_back("C2 + (1 + 4(a1 - alpha))/3 > 0 fails");
            }
            if (c.C2 >= 0.0)
                r.notes.push_back("C2 >= 0: the last inequality holds automatically");
            break;
        }
        case FamilyTag::Polymer49: {
            if (c.sign == SignChoice::Minus)
                r.notes.push_back(
                    "lower sign: nonnegativity typically fails; upper sign with large "
                    "C3, C4 > 0 is the recommended branch");
            const int n = 201;
            for (int i = 0; i < n; ++i) {
                const double xi = x.lo + (x.hi - x.lo) * i / (n - 1);
                try {
                    const Jet2 j = eval_solution_jet(fam, 0.0, xi);
                    if (j.u < 0.0 || j.v < 0.0) {
                        r.admissible = false;
                        r.violations.push_back("concentration negative at t = 0, x = " +
                                               std::to_string(xi));
                        break;
                    }
                } catch (const DomainError& e) {
                    r.admissible = false;
                    r.violations.push_back(e.what());
                    break;
                }
            }
            break;
        }
        default:
            sample_denominator(fam, x, r);
            break;
    }
    return r;
}

ReducedProfile profile_from(std::function<PointJet(double)> jet, std::string provenance) {
    ReducedProfile p;
    p.value = [jet](double x) { return jet(x).v; };
    p.deriv = [jet](double x) { return jet(x).dx; };
    p.deriv2 = [jet](double x) { return jet(x).dxx; };
    p.provenance = std::move(provenance);
    return p;
}

ReducedProfile f_profile(double b2, double alpha1, double alpha2) {
    ReducedProfile p;
    p.value = [=](double x) { return eval_f(b2, alpha1, alpha2, x); };
    p.deriv = [=](double x) { return eval_f_d1(b2, alpha1, alpha2, x); };
    p.deriv2 = [=](double x) { return eval_f_d2(b2, alpha1, alpha2, x); };
    p.provenance = "f";
    return p;
}

Case1Profiles build_case1_profiles(const SktParams& p, double C1, double C2,
                                   double C3, double C4) {
    if (!is_system23_shape(p))
        throw ShapeError("build_case1_profiles requires the canonical b1=d2=0 frame");
    FamilyConstants c;
    c.C1 = C1; c.C2 = C2; c.C3 = C3; c.C4 = C4;
    Case1Profiles out;
    out.phi = profile_from([p, c](double x) { return case1_phi_jet(p.b2, c.C1, c.C2, x); },
                           "case1 phi");
    if (p.a2 != 0.0)
        out.psi = profile_from([p, c](double x) { return case1_psi_jet(p, c, x); },
                               "case1 psi");
    else
        out.psi = profile_from([p, c](double x) { return case1_psi_a2zero_jet(p, c, x); },
                               "case1 psi (a2 = 0)");
    out.kappa = std::sqrt(std::abs(p.a2 * (1.0 + p.c1 - p.b2 * p.d12) - p.b2));
    return out;
}

Ode34SpecialProfiles ode34_special_profiles(double a1, double alpha, double C1,
                                            double C2, double C3) {
    const double q = alpha - a1 - 0.25;
    Ode34SpecialProfiles out;
    out.psi = profile_from([C1](double x) { return C1 * expx(-0.5, x); },
                           "psi = C1 e^{-x/2}");
    out.f = f_profile(1.0, 0.0, C1 * C1 * q);
    out.phi = profile_from(
        [=](double x) {
            return (-4.0 / 3.0) * C1 * q * expx(-0.5, x) + C2 * expx(-1.0, x) +
                   C3 * expx(1.0, x);
        },
        "phi integrated from the psi branch");
    return out;
}

PolymerProfiles polymer_profiles48(double d1, double d2, double C1, double C2,
                                   double C3, double C4, SignChoice sign) {
    const double sgn = sign == SignChoice::Plus ? 1.0 : -1.0;
    auto E = [=](double x) { return C1 * expx(1.0, x) + C2 * expx(-1.0, x); };
    auto rad = [=](double x) {
        const PointJet e = E(x);
        return e * e + C3 * expx(1.0, x) + C4 * expx(-1.0, x);
    };
    PolymerProfiles out;
    out.phi = profile_from(
        [=](double x) {
            const PointJet rj = rad(x);
            if (rj.v <= 0.0) throw DomainError("square-root argument nonpositive");
            return 0.5 * (E(x) + sgn * jsqrt(rj));
        },
        "polymer phi");
    out.psi = profile_from(
        [=](double x) {
            const PointJet rj = rad(x);
            if (rj.v <= 0.0) throw DomainError("square-root argument nonpositive");
            return (-d1 / (2.0 * d2)) * (E(x) - sgn * jsqrt(rj));
        },
        "polymer psi");
    return out;
}

}  // namespace skt
