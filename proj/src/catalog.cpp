#include "skt/catalog.hpp"

#include <cmath>

#include "skt/errors.hpp"

namespace skt {

const char* operator_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::Q1: return "Q1";
        case OperatorKind::Q2: return "Q2";
        case OperatorKind::Q3_0: return "Q3_0";
        case OperatorKind::Q3: return "Q3";
        case OperatorKind::Q4: return "Q4";
        case OperatorKind::Q5: return "Q5";
        case OperatorKind::Q6: return "Q6";
        case OperatorKind::Q7_0: return "Q7_0";
        case OperatorKind::Q7: return "Q7";
        case OperatorKind::Q8: return "Q8";
        case OperatorKind::Q9: return "Q9";
        case OperatorKind::Q10: return "Q10";
        case OperatorKind::Q11_0: return "Q11_0";
        case OperatorKind::Q11: return "Q11";
        case OperatorKind::Q12: return "Q12";
        case OperatorKind::Q13: return "Q13";
    }
    return "?";
}

OperatorKind operator_from_name(const std::string& name) {
    for (OperatorKind k : {OperatorKind::Q1, OperatorKind::Q2, OperatorKind::Q3_0,
                           OperatorKind::Q3, OperatorKind::Q4, OperatorKind::Q5,
                           OperatorKind::Q6, OperatorKind::Q7_0, OperatorKind::Q7,
                           OperatorKind::Q8, OperatorKind::Q9, OperatorKind::Q10,
                           OperatorKind::Q11_0, OperatorKind::Q11, OperatorKind::Q12,
                           OperatorKind::Q13})
        if (name == operator_name(k)) return k;
    throw ConfigError("unknown operator name: " + name);
}

double eval_f(double b2, double a1, double a2, double x) {
    if (b2 > 0) {
        const double r = std::sqrt(b2);
        return a1 * std::exp(r * x) + a2 * std::exp(-r * x);
    }
    if (b2 < 0) {
        const double r = std::sqrt(-b2);
        return a1 * std::cos(r * x) + a2 * std::sin(r * x);
    }
    return a1 + a2 * x;
}

double eval_f_d1(double b2, double a1, double a2, double x) {
    if (b2 > 0) {
        const double r = std::sqrt(b2);
        return r * (a1 * std::exp(r * x) - a2 * std::exp(-r * x));
    }
    if (b2 < 0) {
        const double r = std::sqrt(-b2);
        return r * (-a1 * std::sin(r * x) + a2 * std::cos(r * x));
    }
    return a2;
}

double eval_f_d2(double b2, double a1, double a2, double x) {
    return b2 * eval_f(b2, a1, a2, x);
}

const std::vector<CaseEntry>& table1_cases() {
    static const std::vector<CaseEntry> cases = {
        {1, "d1=d21=c2=1, b1=d2=0; free a1,a2,b2,c1,d12", {OperatorKind::Q1}},
        {2, "d1=d12=d21=1, d2=c2=0, c1=b2, b1!=0; free a1,a2,b1,b2",
         {OperatorKind::Q2, OperatorKind::Q3_0}},
        {3, "d1=d21=1, d2=a2=b1=c2=0; free a1,b2,c1,d12", {OperatorKind::Q4}},
        {4, "d12=d21=1, a1=b1=c2=0, c1=b2; free a2,b2,d1,d2", {OperatorKind::Q5}},
        {5, "d12=d21=1, b1=c2=0, c1=b2, a1=-b2 d1^2/(d1+d2), a2=-b2 d2^2/(d1+d2)",
         {OperatorKind::Q6}},
        {6, "d1=d12=d21=1, d2=b1=0, c1=-a1, c2=a1+b2; free a1,a2,b2",
         {OperatorKind::Q7_0, OperatorKind::Q7}},
        {7, "d1=d12=d21=1, d2=b1=c2=0, c1=b2, a1!=-b2, a2!=0; free a1,a2,b2",
         {OperatorKind::Q3_0, OperatorKind::Q8}},
        {8, "d1=d12=d21=1, d2=b1=0, c1=b2=-(a1+2a2), c2=-a2, a2!=0; free a1,a2",
         {OperatorKind::Q9, OperatorKind::Q10}},
        {9, "d1=d12=d21=1, d2=a2=b1=c2=0, c1=b2, a1+b2!=0; free a1,b2",
         {OperatorKind::Q11_0, OperatorKind::Q11}},
        {10, "d1=d12=d21=1, d2=b1=c2=0, c1=b2, a1=-b2, a2!=0; free a2,b2",
         {OperatorKind::Q8, OperatorKind::Q3}},
        {11, "d1=d12=d21=1, d2=a2=b1=c2=0, c1=b2, a1=-b2; free b2",
         {OperatorKind::Q11_0, OperatorKind::Q12}},
        {12, "d1=d12=d21=1, d2=-1, all reaction coefficients zero",
         {OperatorKind::Q13}},
    };
    return cases;
}

const CaseEntry& table1_case(int case_id) {
    for (const auto& c : table1_cases())
        if (c.case_id == case_id) return c;
    throw ConfigError("case_id out of range 1..12");
}

SktParams canonical_case_params(int case_id, const CaseFreeValues& f) {
    SktParams p;
    switch (case_id) {
        case 1:
            p.d1 = 1; p.d21 = 1; p.c2 = 1;
            p.d12 = f.d12; p.a1 = f.a1; p.a2 = f.a2; p.b2 = f.b2; p.c1 = f.c1;
            break;
        case 2:
            if (f.b1 == 0.0) throw ShapeError("case 2 requires b1 != 0");
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = f.a1; p.b1 = f.b1; p.a2 = f.a2; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 3:
            p.d1 = 1; p.d21 = 1;
            p.d12 = f.d12; p.a1 = f.a1; p.c1 = f.c1; p.b2 = f.b2;
            break;
        case 4:
            p.d12 = 1; p.d21 = 1;
            p.d1 = f.d1; p.d2 = f.d2; p.a2 = f.a2; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 5: {
            if (f.b2 == 0.0) throw ShapeError("case 5 requires b2 != 0");
            if (f.d1 + f.d2 == 0.0) throw ShapeError("case 5 requires d1 + d2 != 0");
            const double s = f.d1 + f.d2;
            p.d12 = 1; p.d21 = 1;
            p.d1 = f.d1; p.d2 = f.d2; p.b2 = f.b2; p.c1 = f.b2;
            p.a1 = -f.b2 * f.d1 * f.d1 / s;
            p.a2 = -f.b2 * f.d2 * f.d2 / s;
            break;
        }
        case 6:
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = f.a1; p.c1 = -f.a1; p.a2 = f.a2; p.b2 = f.b2; p.c2 = f.a1 + f.b2;
            break;
        case 7:
            if (f.a2 == 0.0) throw ShapeError("case 7 requires a2 != 0");
            if (f.a1 == -f.b2) throw ShapeError("case 7 requires a1 != -b2");
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = f.a1; p.a2 = f.a2; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 8:
            if (f.a2 == 0.0) throw ShapeError("case 8 requires a2 != 0");
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = f.a1; p.a2 = f.a2;
            p.b2 = -(f.a1 + 2 * f.a2); p.c1 = -(f.a1 + 2 * f.a2); p.c2 = -f.a2;
            break;
        case 9:
            if (f.a1 + f.b2 == 0.0) throw ShapeError("case 9 requires a1 + b2 != 0");
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = f.a1; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 10:
            if (f.a2 == 0.0) throw ShapeError("case 10 requires a2 != 0");
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = -f.b2; p.a2 = f.a2; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 11:
            p.d1 = 1; p.d12 = 1; p.d21 = 1;
            p.a1 = -f.b2; p.b2 = f.b2; p.c1 = f.b2;
            break;
        case 12:
            p.d1 = 1; p.d2 = -1; p.d12 = 1; p.d21 = 1;
            break;
        default:
            throw ConfigError("case_id out of range 1..12");
    }
    const ValidationResult vr = validate_params(p);
    if (!vr.ok) throw ShapeError("case free values violate the coefficient restrictions");
    return p;
}

namespace {

bool near(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * scale;
}

}  // namespace

bool case_shape_matches(int case_id, const SktParams& p) {
    switch (case_id) {
        case 1:
            return p.d1 == 1 && p.d21 == 1 && p.c2 == 1 && p.b1 == 0 && p.d2 == 0;
        case 2:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.c2 == 0 && p.b1 != 0 && near(p.c1, p.b2);
        case 3:
            return p.d1 == 1 && p.d21 == 1 && p.d2 == 0 && p.a2 == 0 &&
                   p.b1 == 0 && p.c2 == 0;
        case 4:
            return p.d12 == 1 && p.d21 == 1 && p.a1 == 0 && p.b1 == 0 &&
                   p.c2 == 0 && near(p.c1, p.b2);
        case 5: {
            if (!(p.d12 == 1 && p.d21 == 1 && p.b1 == 0 && p.c2 == 0 &&
                  near(p.c1, p.b2) && p.b2 != 0 && p.d1 + p.d2 != 0))
                return false;
            const double s = p.d1 + p.d2;
            return near(p.a1, -p.b2 * p.d1 * p.d1 / s) &&
                   near(p.a2, -p.b2 * p.d2 * p.d2 / s);
        }
        case 6:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && near(p.c1, -p.a1) && near(p.c2, p.a1 + p.b2);
        case 7:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && p.c2 == 0 && near(p.c1, p.b2) && p.a2 != 0 &&
                   !near(p.a1, -p.b2);
        case 8:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && p.a2 != 0 && near(p.b2, -(p.a1 + 2 * p.a2)) &&
                   near(p.c1, -(p.a1 + 2 * p.a2)) && near(p.c2, -p.a2);
        case 9:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && p.c2 == 0 && p.a2 == 0 && near(p.c1, p.b2) &&
                   p.a1 + p.b2 != 0;
        case 10:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && p.c2 == 0 && p.a2 != 0 && near(p.c1, p.b2) &&
                   near(p.a1, -p.b2);
        case 11:
            return p.d1 == 1 && p.d12 == 1 && p.d21 == 1 && p.d2 == 0 &&
                   p.b1 == 0 && p.c2 == 0 && p.a2 == 0 && near(p.c1, p.b2) &&
                   near(p.a1, -p.b2);
        case 12:
            return p.d1 == 1 && p.d2 == -1 && p.d12 == 1 && p.d21 == 1 &&
                   p.a1 == 0 && p.a2 == 0 && p.b1 == 0 && p.b2 == 0 &&
                   p.c1 == 0 && p.c2 == 0;
        default:
            throw ConfigError("case_id out of range 1..12");
    }
}

SymmetryOperator make_operator(OperatorKind kind, int case_id, const SktParams& p,
                               OperatorConstants c) {
    const CaseEntry& entry = table1_case(case_id);
    bool listed = false;
    for (OperatorKind k : entry.operators) listed |= (k == kind);
    if (!listed)
        throw ConfigError(std::string("operator ") + operator_name(kind) +
                          " is not listed for catalog case " + std::to_string(case_id));
    if (!case_shape_matches(case_id, p))
        throw ShapeError("params do not match the canonical shape of the case");
    switch (kind) {
        case OperatorKind::Q5:
            if (p.a2 + p.b2 * p.d2 == 0.0)
                throw ShapeError("Q5 requires a2 + b2 d2 != 0");
            break;
        case OperatorKind::Q6:
            if (p.b2 == 0.0 || p.d1 + p.d2 == 0.0)
                throw ShapeError("Q6 requires b2 != 0 and d1 + d2 != 0");
            break;
        case OperatorKind::Q11:
            if (p.a1 + p.b2 == 0.0) throw ShapeError("Q11 requires a1 + b2 != 0");
            if (c.alpha0 == 0.0) throw ShapeError("Q11 requires alpha0 != 0");
            break;
        default:
            break;
    }
    return SymmetryOperator{kind, case_id, p, c};
}

namespace {

void fill_f_over_u(CoefficientBundle& b, double factor, double factor_t,
                   double f, double fd1, double fd2, double u) {
    // eta2 = factor(t) * f(x) / u contributions
    b.eta2 += factor * f / u;
    b.eta2_t += factor_t * f / u;
    b.eta2_x += factor * fd1 / u;
    b.eta2_xx += factor * fd2 / u;
    b.eta2_u += -factor * f / (u * u);
    b.eta2_uu += 2.0 * factor * f / (u * u * u);
    b.eta2_xu += -factor * fd1 / (u * u);
}

void guard_u(double u, const char* op) {
    if (std::abs(u) < 1e-30)
        throw DomainError(std::string(op) + ": f(x)/u term undefined at u = 0");
}

}  // namespace

CoefficientBundle operator_coefficients(const SymmetryOperator& op, double t,
                                        double x, double u, double v) {
    const SktParams& p = op.params;
    const OperatorConstants& c = op.c;
    const double beta = p.a1 + p.b2;
    CoefficientBundle b;  // xi and every unspecified partial stay zero
    const double f = eval_f(p.b2, c.f_alpha1, c.f_alpha2, x);
    const double fd1 = eval_f_d1(p.b2, c.f_alpha1, c.f_alpha2, x);
    const double fd2 = eval_f_d2(p.b2, c.f_alpha1, c.f_alpha2, x);

    switch (op.kind) {
        case OperatorKind::Q1: {
            const double A = p.a1 + p.b2 * (p.a2 * p.d12 + 1.0) - p.a2 * (p.c1 + 1.0);
            b.eta1 = u * (v + A);
            b.eta1_u = v + A;
            b.eta1_v = u;
            b.eta1_uv = 1.0;
            b.eta2 = v * (p.a2 - v);
            b.eta2_v = p.a2 - 2.0 * v;
            b.eta2_vv = -2.0;
            break;
        }
        case OperatorKind::Q2:
            b.eta2 = p.a2 * v;
            b.eta2_v = p.a2;
            break;
        case OperatorKind::Q3_0: {
            guard_u(u, "Q3_0");
            const double E = std::exp(p.a2 * t);
            fill_f_over_u(b, E, p.a2 * E, f, fd1, fd2, u);
            break;
        }
        case OperatorKind::Q3: {
            guard_u(u, "Q3");
            const double E = std::exp(p.a2 * t);
            const double den = c.alpha0 * E + p.a2 - c.alpha0;
            if (std::abs(den) < 1e-30 * (std::abs(c.alpha0 * E) + std::abs(p.a2) +
                                         std::abs(c.alpha0)))
                throw DomainError("Q3: alpha0*exp(a2 t) + a2 - alpha0 vanishes");
            const double g = p.a2 * E / den;
            const double gp = p.a2 * p.a2 * E * (p.a2 - c.alpha0) / (den * den);
            b.eta2 = g * (c.alpha0 * (1.0 + v));
            b.eta2_t = gp * (c.alpha0 * (1.0 + v));
            b.eta2_v = g * c.alpha0;
            fill_f_over_u(b, g, gp, f, fd1, fd2, u);
            break;
        }
        case OperatorKind::Q4:
            b.eta1 = c.alpha * u;
            b.eta1_u = c.alpha;
            break;
        case OperatorKind::Q5: {
            const double m = p.a2 + p.b2 * p.d2;
            b.eta1 = m * (p.d2 + u);
            b.eta1_u = m;
            b.eta2 = m * v;
            b.eta2_v = m;
            break;
        }
        case OperatorKind::Q6: {
            const double s = p.d1 + p.d2;
            const double m = p.b2 * p.d1 * p.d2 / s;
            b.eta1 = m * (p.d2 * p.d2 / s + u);
            b.eta1_u = m;
            b.eta2 = m * (p.d1 * p.d1 / s + v);
            b.eta2_v = m;
            break;
        }
        case OperatorKind::Q7_0:
            b.eta1 = beta * u * (1.0 + v);
            b.eta1_u = beta * (1.0 + v);
            b.eta1_v = beta * u;
            b.eta1_uv = beta;
            b.eta2 = p.a2 * v - beta * v * v;
            b.eta2_v = p.a2 - 2.0 * beta * v;
            b.eta2_vv = -2.0 * beta;
            break;
        case OperatorKind::Q7:
            b.eta1 = beta * u * (1.0 + v);
            b.eta1_u = beta * (1.0 + v);
            b.eta1_v = beta * u;
            b.eta1_uv = beta;
            b.eta2 = beta + p.a2 + p.a2 * v - beta * v * v;
            b.eta2_v = p.a2 - 2.0 * beta * v;
            b.eta2_vv = -2.0 * beta;
            break;
        case OperatorKind::Q8:
            b.eta1 = c.alpha * u;
            b.eta1_u = c.alpha;
            b.eta2 = p.a2 * v;
            b.eta2_v = p.a2;
            break;
        case OperatorKind::Q9:
            b.eta1 = -2.0 * p.a2 * u;
            b.eta1_u = -2.0 * p.a2;
            b.eta2 = -p.a2 * (1.0 + v);
            b.eta2_v = -p.a2;
            break;
        case OperatorKind::Q10:
            b.eta1 = -p.a2 * u * (3.0 + v);
            b.eta1_u = -p.a2 * (3.0 + v);
            b.eta1_v = -p.a2 * u;
            b.eta1_uv = -p.a2;
            b.eta2 = p.a2 * (1.0 + v) * v;
            b.eta2_v = p.a2 * (1.0 + 2.0 * v);
            b.eta2_vv = 2.0 * p.a2;
            break;
        case OperatorKind::Q11_0: {
            guard_u(u, "Q11_0");
            b.eta1 = c.alpha * u;
            b.eta1_u = c.alpha;
            const double E = std::exp(2.0 * c.alpha * t);
            fill_f_over_u(b, E, 2.0 * c.alpha * E, f, fd1, fd2, u);
            break;
        }
        case OperatorKind::Q11: {
            guard_u(u, "Q11");
            const double E = std::exp(beta * t);
            const double den = c.alpha0 * E + beta - c.alpha0;
            if (std::abs(den) < 1e-30 * (std::abs(c.alpha0 * E) + std::abs(beta) +
                                         std::abs(c.alpha0)))
                throw DomainError("Q11: alpha0*exp(beta t) + beta - alpha0 vanishes");
            const double g = beta * E / den;
            const double gp = beta * beta * E * (beta - c.alpha0) / (den * den);
            b.eta1 = beta * u;
            b.eta1_u = beta;
            b.eta2 = g * c.alpha0 * (1.0 + v);
            b.eta2_t = gp * c.alpha0 * (1.0 + v);
            b.eta2_v = g * c.alpha0;
            // the f-term carries an extra exp(beta t) inside the bracket
            fill_f_over_u(b, g * E, gp * E + g * beta * E, f, fd1, fd2, u);
            break;
        }
        case OperatorKind::Q12: {
            guard_u(u, "Q12");
            if (std::abs(t) < 1e-30)
                throw DomainError("Q12: coefficient 1/t undefined at t = 0");
            b.eta2 = (1.0 + v) / t;
            b.eta2_t = -(1.0 + v) / (t * t);
            b.eta2_v = 1.0 / t;
            fill_f_over_u(b, 1.0 / t, -1.0 / (t * t), f, fd1, fd2, u);
            break;
        }
        case OperatorKind::Q13:
            b.eta1 = c.alpha;
            b.eta2 = c.alpha;
            break;
    }
    return b;
}

}  // namespace skt
