#include "skt/params.hpp"

#include <cmath>

namespace skt {

const char* restriction_id(Restriction r) {
    switch (r) {
        case Restriction::CrossDiffusionPresent: return "cross_diffusion_present";
        case Restriction::FirstEquationParabolic: return "first_equation_parabolic";
        case Restriction::SecondEquationParabolic: return "second_equation_parabolic";
        case Restriction::DiffusionPresent: return "diffusion_present";
        case Restriction::FirstEquationCoupled: return "first_equation_coupled";
        case Restriction::SecondEquationCoupled: return "second_equation_coupled";
    }
    return "?";
}

const char* restriction_text(Restriction r) {
    switch (r) {
        case Restriction::CrossDiffusionPresent: return "d12^2 + d21^2 != 0";
        case Restriction::FirstEquationParabolic: return "d1^2 + d12^2 != 0";
        case Restriction::SecondEquationParabolic: return "d2^2 + d21^2 != 0";
        case Restriction::DiffusionPresent: return "d1^2 + d2^2 != 0";
        case Restriction::FirstEquationCoupled: return "d12^2 + c1^2 != 0";
        case Restriction::SecondEquationCoupled: return "d21^2 + b2^2 != 0";
    }
    return "?";
}

ValidationResult validate_params(const SktParams& p) {
    ValidationResult r;
    const struct { const char* name; double value; } fields[] = {
        {"a1", p.a1}, {"a2", p.a2}, {"b1", p.b1}, {"b2", p.b2}, {"c1", p.c1},
        {"c2", p.c2}, {"d1", p.d1}, {"d2", p.d2}, {"d12", p.d12}, {"d21", p.d21},
    };
    for (const auto& f : fields)
        if (!std::isfinite(f.value)) r.nonfinite_fields.push_back(f.name);
    if (!r.nonfinite_fields.empty()) return r;

    auto both_zero = [](double a, double b) { return a == 0.0 && b == 0.0; };
    if (both_zero(p.d12, p.d21)) r.violated.push_back(Restriction::CrossDiffusionPresent);
    if (both_zero(p.d1, p.d12)) r.violated.push_back(Restriction::FirstEquationParabolic);
    if (both_zero(p.d2, p.d21)) r.violated.push_back(Restriction::SecondEquationParabolic);
    if (both_zero(p.d1, p.d2)) r.violated.push_back(Restriction::DiffusionPresent);
    if (both_zero(p.d12, p.c1)) r.violated.push_back(Restriction::FirstEquationCoupled);
    if (both_zero(p.d21, p.b2)) r.violated.push_back(Restriction::SecondEquationCoupled);
    r.ok = r.violated.empty();
    return r;
}

ReactionTerms reaction_terms(const SktParams& p, double u, double v) {
    return {u * (p.a1 - p.b1 * u - p.c1 * v), v * (p.a2 - p.b2 * u - p.c2 * v)};
}

bool is_constant_steady_state(const SktParams& p, double u0, double v0, double tol) {
    const ReactionTerms f = reaction_terms(p, u0, v0);
    return std::abs(f.f1) <= tol && std::abs(f.f2) <= tol;
}

bool is_system23_shape(const SktParams& p) {
    return p.b1 == 0.0 && p.d2 == 0.0 && p.d1 == 1.0 && p.d21 == 1.0 && p.c2 == 1.0;
}

bool is_system31_shape(const SktParams& p) {
    return p.d1 == 1.0 && p.d12 == 1.0 && p.d21 == 1.0 && p.d2 == 0.0 &&
           p.b1 == 0.0 && p.c2 == 0.0 && p.a2 == 0.0 && p.c1 == 1.0 && p.b2 == 1.0;
}

}  // namespace skt
