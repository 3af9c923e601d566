#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skt/catalog.hpp"
#include "skt/jet.hpp"
#include "skt/params.hpp"
#include "skt/solutions.hpp"

namespace skt {

/// Deterministic sample box. Residual drivers draw points with a fixed
/// 64-bit generator so identical seeds give identical reports bit-for-bit.
struct SamplingSpec {
    struct Range {
        double lo = 0, hi = 0;
    };
    Range t{0.1, 2.0};
    Range x{-3.0, 3.0};
    Range u{0.2, 5.0};
    Range v{0.2, 5.0};
    int count = 100;
    std::uint64_t seed = 20240001;
};

struct EquationResidual {
    std::string equation_id;
    double max_abs = 0;
    double mean_abs = 0;
    long samples = 0;
    double worst_t = 0, worst_x = 0, worst_u = 0, worst_v = 0;
    bool pass = false;
};

struct ResidualReport {
    std::vector<EquationResidual> equations;
    double tolerance = 0;
    long requested = 0;
    long evaluated = 0;
    long skipped = 0;
    bool pass = false;

    const EquationResidual* find(const std::string& id) const;
    double max_over_equations() const;
};

struct PdeResidual {
    double s1 = 0, s2 = 0;
};

/// S1 = [(d1 + d12 v) u]_xx - u_t + F1 with the product expanded as
/// (d1 + d12 v) u_xx + 2 d12 u_x v_x + d12 v_xx u (S2 analogous).
PdeResidual pde_residual(const SktParams& p, const Jet2& jet);

/// Max |S1|, |S2| of a field over a (t, x) sample box (u/v ranges unused).
ResidualReport verify_family(const SktParams& p, const JetField& field,
                             const SamplingSpec& spec, double tol = 1e-8);
ResidualReport verify_family(const SktParams& p, const SolutionFamily& fam,
                             const SamplingSpec& spec, double tol = 1e-8);

/// Max |u_t + xi u_x - eta1|, |v_t + xi v_x - eta2| of a field over a
/// (t, x) sample box, with the operator coefficients evaluated on the field.
ResidualReport invariant_surface_residual(const SymmetryOperator& op,
                                          const JetField& field,
                                          const SamplingSpec& spec,
                                          double tol = 1e-8);

/// D, reaction terms and the cross-diffusion defect entering the
/// determining system.
struct DeterminingContext {
    double D = 0;      // d1 d2 + d1 d21 u + d2 d12 v
    double F1 = 0, F2 = 0;
    double Delta = 0;  // d12 (F2 - eta2) - d21 (F1 - eta1)
};

DeterminingContext determining_context(const SktParams& p, double u, double v,
                                       double eta1, double eta2);

inline constexpr int kDeterminingEquationCount = 12;
const std::array<const char*, kDeterminingEquationCount>& determining_equation_ids();

struct TermValue {
    std::string name;
    double value = 0;
};

/// Residuals of the twelve printed determining equations at one point.
/// The two long reaction equations are assembled term by term; when
/// `terms16`/`terms17` are supplied the named subexpressions are recorded.
std::array<double, kDeterminingEquationCount> determining_equations(
    const SktParams& p, const CoefficientBundle& b, double u, double v,
    std::vector<TermValue>* terms16 = nullptr,
    std::vector<TermValue>* terms17 = nullptr);

/// Structured finding filed when a determining run fails only on the two
/// long reaction equations: by policy a possible transcription ambiguity is
/// reported with per-term diagnostics, never silently corrected.
struct AmbiguityReport {
    int case_id = 0;
    OperatorKind op = OperatorKind::Q13;
    std::vector<std::string> failing_equations;
    double worst_t = 0, worst_x = 0, worst_u = 0, worst_v = 0;
    std::vector<TermValue> terms_eq16;
    std::vector<TermValue> terms_eq17;
};

struct DeterminingResult {
    ResidualReport report;
    std::optional<AmbiguityReport> ambiguity;
};

/// Evaluates all twelve determining equations over a seeded (t,x,u,v) box.
/// Points with |D| below the relative guard are skipped and counted; the run
/// must retain at least 90% of the requested samples.
DeterminingResult determining_residual(const SymmetryOperator& op,
                                       const SamplingSpec& spec,
                                       double tol = 1e-9);

/// The reduced ODE systems attached to the operator catalog, plus the
/// canonical-frame and polymer reductions.
enum class ReducedSystemId {
    Ode27,            // linear pair of the first catalog case (gamma-coupled)
    Ode34,            // canonical-frame f-coupled pair, alpha != 0
    Ode34Alpha0,      // same with alpha = 0
    Ode35,            // phi'' = phi with psi psi'' - psi^2 + alpha0(1+a1) phi = 0
    Ode45,            // nonlinear polymer pair
    OdeQ2,
    OdeQ3_0,          // a2 != 0 branch
    OdeQ3_0A2Zero,
    OdeQ4,
    OdeQ5,
    OdeQ8,
    OdeQ11_0,         // alpha != 0 branch, general b2
    OdeQ11_0Alpha0,
    OdeQ11,
};

const char* reduced_system_name(ReducedSystemId id);
ReducedSystemId reduced_system_from_name(const std::string& name);

struct ReducedOdeInputs {
    ReducedProfile phi, psi;
    SktParams params;                  // coefficients referenced by the system
    double alpha = 0, alpha0 = 0;
    std::optional<ReducedProfile> f;   // auxiliary profile where the row uses one
};

/// Per-equation max residual over the sample abscissas. Points where a
/// profile is undefined or a psi-denominator vanishes are skipped with count.
ResidualReport reduced_ode_residual(ReducedSystemId id, const ReducedOdeInputs& in,
                                    std::span<const double> xs, double tol = 1e-8);

}  // namespace skt
