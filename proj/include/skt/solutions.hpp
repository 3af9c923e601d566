#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skt/jet.hpp"
#include "skt/params.hpp"
#include "skt/transforms.hpp"

namespace skt {

/// The closed-form exact-solution families of the catalog.
enum class FamilyTag {
    Case1_A2NonZero,   // time-rational pair from the a2 != 0 ansatz
    Case1_A2Zero,      // linear-in-t ansatz, a2 = 0
    Case1_Explicit30,  // single-sine parameterization (C3, x0), b2 > 0
    Case9_F0,          // trigonometric/exponential separable pair, f = 0
    Case9_Exp,         // plane-wave-plus-tails pair, alpha != 0
    Case9_Phi0,        // exponential pair with v = f/psi - 1
    Polymer49,         // polymer pair with square-root profiles
};

const char* family_name(FamilyTag t);
FamilyTag family_from_name(const std::string& name);

enum class SignChoice { Plus, Minus };

/// Coefficients of the two-monomer polymer system
///   u_t = [(d1 + d3 K v) u]_xx - u (a1 + a3 K v)   (v analogous),
/// with a1, a2 pinned to a3 d_i^2 / (d3 (d1 + d2)).
struct PolymerParams {
    double K = 1, a3 = 1, d3 = 1, d1 = 1, d2 = 1;
    SktParams system() const;
};

struct FamilyConstants {
    double C1 = 0, C2 = 0, C3 = 0, C4 = 0;
    double x0 = 0;
    double alpha = 0;
    double f_alpha1 = 0, f_alpha2 = 0;
    SignChoice sign = SignChoice::Plus;
};

struct SolutionFamily {
    FamilyTag tag = FamilyTag::Case1_Explicit30;
    SktParams params;  // system the family solves
    FamilyConstants c;
    std::optional<PolymerParams> poly;  // Polymer49 only
};

/// Binds a family to its system, validating the family-specific constraints
/// (canonical shape, sign conditions, nonzero constants).
SolutionFamily make_family(FamilyTag tag, const SktParams& p, FamilyConstants c);
SolutionFamily make_polymer_family(const PolymerParams& pp, FamilyConstants c);

/// Evaluates the closed form together with its analytic derivative jet.
/// Throws DomainError (with the location) outside the admissible domain.
Jet2 eval_solution_jet(const SolutionFamily& fam, double t, double x);

/// The (u, v) entries of eval_solution_jet — same computation, bit-for-bit.
std::pair<double, double> eval_solution(const SolutionFamily& fam, double t, double x);

/// Type-erased jet-valued field. Residual drivers sample these; family
/// fields, transform images and deliberately mismatched mixtures all fit.
struct JetField {
    std::function<Jet2(double, double)> jet;
};

JetField field_of(const SolutionFamily& fam);

/// Image of a source-system field under a VarMap (solution of the
/// transformed system).
JetField mapped_field(const JetField& src, const VarMap& m);

/// u-lane from one field, v-lane from another (negative controls).
JetField mixed_field(const JetField& u_from, const JetField& v_from);

struct Interval {
    double lo = 0, hi = 0;
};

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
};

/// Checks the family's boundedness/nonnegativity restrictions over an
/// x-interval. Always returns a report; never throws on inadmissibility.
AdmissibilityReport admissible_domain(const SolutionFamily& fam, Interval x);

/// Profile with closed-form first and second derivatives.
struct ReducedProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::function<double(double)> deriv2;
    std::string provenance;
};

/// Profile built from a pointwise x-jet evaluator.
ReducedProfile profile_from(std::function<PointJet(double)> jet, std::string provenance);

/// f with f'' = b2 f, as a profile.
ReducedProfile f_profile(double b2, double alpha1, double alpha2);

struct Case1Profiles {
    ReducedProfile phi, psi;
    double kappa = 0;  // sqrt(|a2 (1 + c1 - b2 d12) - b2|)
};

/// Profile pair of the linear reduced system attached to the first catalog
/// case; branch selection follows sign(b2) for phi and the sign of
/// a2 (1 + c1 - b2 d12) - b2 (or the a2 = 0 formulas) for psi.
Case1Profiles build_case1_profiles(const SktParams& p, double C1, double C2,
                                   double C3, double C4);

struct PolymerProfiles {
    ReducedProfile phi, psi;
};

/// Particular solution branch of the canonical-frame f-coupled reduction:
/// psi = C1 e^{-x/2} with f = C1^2 (alpha - a1 - 1/4) e^{-x} and the
/// integrated phi = -(4/3) C1 (alpha - a1 - 1/4) e^{-x/2} + C2 e^{-x} + C3 e^x.
struct Ode34SpecialProfiles {
    ReducedProfile phi, psi, f;
};

Ode34SpecialProfiles ode34_special_profiles(double a1, double alpha, double C1,
                                            double C2, double C3);

/// Square-root profile pair solving the nonlinear polymer reduction
/// (pre-scaling frame, unit decay rate).
PolymerProfiles polymer_profiles48(double d1, double d2, double C1, double C2,
                                   double C3, double C4, SignChoice sign);

}  // namespace skt
