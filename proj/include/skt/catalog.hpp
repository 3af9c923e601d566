#pragma once

#include <string>
#include <vector>

#include "skt/params.hpp"

namespace skt {

/// Operator tags of the twelve-entry conditional-symmetry catalog. Q3_0 and
/// Q3 are distinct operators despite the similar naming (Q3_0 appears in the
/// b1 != 0 case and again alongside Q8; Q3 carries the rational time factor).
enum class OperatorKind {
    Q1, Q2, Q3_0, Q3, Q4, Q5, Q6, Q7_0, Q7, Q8, Q9, Q10, Q11_0, Q11, Q12, Q13
};

const char* operator_name(OperatorKind k);
OperatorKind operator_from_name(const std::string& name);

/// Free constants of the parameterized operators. alpha feeds Q4, Q8, Q11_0
/// and Q13; alpha0 feeds Q3 and Q11 (Q11 needs alpha0 != 0); f_alpha1/2 are
/// the two constants of the auxiliary profile f with f'' = b2 f.
struct OperatorConstants {
    double alpha = 0;
    double alpha0 = 0;
    double f_alpha1 = 0;
    double f_alpha2 = 0;
};

struct SymmetryOperator {
    OperatorKind kind = OperatorKind::Q13;
    int case_id = 0;        // owning catalog entry
    SktParams params;       // system the operator is bound to
    OperatorConstants c;
};

/// Validates operator-specific restrictions (a2 + b2 d2 != 0 for Q5,
/// b2 != 0 and d1 + d2 != 0 for Q6, beta = a1 + b2 != 0 and alpha0 != 0 for
/// Q11, a2 != 0 where the case demands it) and binds the operator.
SymmetryOperator make_operator(OperatorKind kind, int case_id, const SktParams& p,
                               OperatorConstants c = {});

/// Coefficient functions of one operator at a point, with every partial that
/// the determining system consumes. All values are analytic closed forms.
struct CoefficientBundle {
    double xi = 0, xi_t = 0, xi_x = 0, xi_xx = 0;
    double eta1 = 0, eta1_t = 0, eta1_x = 0, eta1_xx = 0;
    double eta1_u = 0, eta1_v = 0, eta1_uu = 0, eta1_uv = 0, eta1_vv = 0;
    double eta1_xu = 0, eta1_xv = 0;
    double eta2 = 0, eta2_t = 0, eta2_x = 0, eta2_xx = 0;
    double eta2_u = 0, eta2_v = 0, eta2_uu = 0, eta2_uv = 0, eta2_vv = 0;
    double eta2_xu = 0, eta2_xv = 0;
};

/// Throws DomainError when the point hits an operator singularity (u = 0
/// under an f(x)/u term, a vanishing rational-time denominator, or t = 0
/// for Q12), naming the offending expression.
CoefficientBundle operator_coefficients(const SymmetryOperator& op, double t,
                                        double x, double u, double v);

/// General solution of f'' - b2 f = 0: exponentials for b2 > 0,
/// trigonometric for b2 < 0, affine for b2 = 0.
double eval_f(double b2, double alpha1, double alpha2, double x);
double eval_f_d1(double b2, double alpha1, double alpha2, double x);
double eval_f_d2(double b2, double alpha1, double alpha2, double x);

/// One row of the operator catalog: which operators a canonical system
/// admits and the predicate pinning its coefficient shape.
struct CaseEntry {
    int case_id = 0;
    std::string description;
    std::vector<OperatorKind> operators;
};

const std::vector<CaseEntry>& table1_cases();
const CaseEntry& table1_case(int case_id);

/// Free coefficient values a canonical case leaves open; fields the case
/// pins (to 0, 1, -1 or a tied combination) are ignored.
struct CaseFreeValues {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0, c1 = 0, d12 = 0, d1 = 0, d2 = 0;
};

/// Builds the canonical coefficient set of one catalog case. Throws
/// ShapeError when a required restriction fails (e.g. b1 = 0 in case 2).
SktParams canonical_case_params(int case_id, const CaseFreeValues& f);

/// True when p equals the canonical shape of the case (pinned entries exact,
/// tied entries within 1e-12 relative).
bool case_shape_matches(int case_id, const SktParams& p);

}  // namespace skt
