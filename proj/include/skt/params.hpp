#pragma once

#include <string>
#include <vector>

namespace skt {

/// Coefficients of the simplified SKT cross-diffusion system
///   u_t = [(d1 + d12 v) u]_xx + u (a1 - b1 u - c1 v),
///   v_t = [(d2 + d21 u) v]_xx + v (a2 - b2 u - c2 v).
struct SktParams {
    double a1 = 0, a2 = 0;    // intrinsic growth rates        [1/time]
    double b1 = 0, c2 = 0;    // intra-specific competition    [1/(density time)]
    double b2 = 0, c1 = 0;    // inter-specific competition    [1/(density time)]
    double d1 = 0, d2 = 0;    // diffusivities                 [length^2/time]
    double d12 = 0, d21 = 0;  // cross-diffusion coefficients  [length^2/(density time)]
};

/// The six coupling/irreducibility restrictions the coefficients must obey.
enum class Restriction {
    CrossDiffusionPresent,   // d12^2 + d21^2 != 0
    FirstEquationParabolic,  // d1^2  + d12^2 != 0
    SecondEquationParabolic, // d2^2  + d21^2 != 0
    DiffusionPresent,        // d1^2  + d2^2  != 0
    FirstEquationCoupled,    // d12^2 + c1^2  != 0
    SecondEquationCoupled,   // d21^2 + b2^2  != 0
};

const char* restriction_id(Restriction r);
const char* restriction_text(Restriction r);

struct ValidationResult {
    bool ok = false;
    std::vector<std::string> nonfinite_fields;  // distinct from restriction violations
    std::vector<Restriction> violated;
};

/// Checks all six restrictions. Comparison against zero is exact: the
/// coefficients are user inputs, not computed quantities.
ValidationResult validate_params(const SktParams& p);

struct ReactionTerms {
    double f1 = 0;  // u (a1 - b1 u - c1 v)
    double f2 = 0;  // v (a2 - b2 u - c2 v)
};

ReactionTerms reaction_terms(const SktParams& p, double u, double v);

/// Constants have vanishing spatial derivatives, so (u0,v0) is a steady
/// state exactly when both reaction terms vanish within tol.
bool is_constant_steady_state(const SktParams& p, double u0, double v0, double tol);

/// True when p has the canonical form of the b1 = d2 = 0 reduction
/// (d1 = d21 = c2 = 1), the frame the scenario classification lives in.
bool is_system23_shape(const SktParams& p);

/// True when p is the fully canonical one-parameter competition form
/// (d1 = d12 = d21 = c1 = b2 = 1, d2 = b1 = c2 = a2 = 0, a1 free).
bool is_system31_shape(const SktParams& p);

}  // namespace skt
