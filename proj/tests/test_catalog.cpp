#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "skt/catalog.hpp"
#include "skt/errors.hpp"

using namespace skt;

namespace {

struct CasePair {
    int case_id;
    OperatorKind kind;
};

const std::vector<CasePair>& all_pairs() {
    static const std::vector<CasePair> pairs = [] {
        std::vector<CasePair> out;
        for (const CaseEntry& c : table1_cases())
            for (OperatorKind k : c.operators) out.push_back({c.case_id, k});
        return out;
    }();
    return pairs;
}

CaseFreeValues generic_frees() {
    CaseFreeValues f;
    f.a1 = 1.3;
    f.a2 = 0.7;
    f.b1 = 1.7;
    f.b2 = 0.61;
    f.c1 = 2.3;
    f.d12 = 1.9;
    f.d1 = 1.1;
    f.d2 = 0.83;
    return f;
}

OperatorConstants generic_constants() {
    OperatorConstants c;
    c.alpha = 0.57;
    c.alpha0 = 0.73;
    c.f_alpha1 = 0.41;
    c.f_alpha2 = -0.29;
    return c;
}

// central finite differences on the eta values only
struct FdBundle {
    double eta1_t, eta1_x, eta1_xx, eta1_u, eta1_v;
    double eta1_uu, eta1_uv, eta1_vv, eta1_xu, eta1_xv;
    double eta2_t, eta2_x, eta2_xx, eta2_u, eta2_v;
    double eta2_uu, eta2_uv, eta2_vv, eta2_xu, eta2_xv;
};

FdBundle fd_bundle(const SymmetryOperator& op, double t, double x, double u,
                   double v) {
    auto e1 = [&](double T, double X, double U, double V) {
        return operator_coefficients(op, T, X, U, V).eta1;
    };
    auto e2 = [&](double T, double X, double U, double V) {
        return operator_coefficients(op, T, X, U, V).eta2;
    };
    const double ht = 1e-5 * std::max(1.0, std::abs(t));
    const double hx = 1e-5 * std::max(1.0, std::abs(x));
    const double hu = 1e-5 * std::max(1.0, std::abs(u));
    const double hv = 1e-5 * std::max(1.0, std::abs(v));
    const double Hx = 1e-4 * std::max(1.0, std::abs(x));
    const double Hu = 1e-4 * std::max(1.0, std::abs(u));
    const double Hv = 1e-4 * std::max(1.0, std::abs(v));
    auto d1 = [](auto f, double h) { return (f(h) - f(-h)) / (2 * h); };
    auto d2 = [](auto f, double h) {
        return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    };
    auto mixed = [](auto f, double ha, double hb) {
        return (f(ha, hb) - f(ha, -hb) - f(-ha, hb) + f(-ha, -hb)) /
               (4 * ha * hb);
    };
    FdBundle b;
    b.eta1_t = d1([&](double h) { return e1(t + h, x, u, v); }, ht);
    b.eta1_x = d1([&](double h) { return e1(t, x + h, u, v); }, hx);
    b.eta1_xx = d2([&](double h) { return e1(t, x + h, u, v); }, Hx);
    b.eta1_u = d1([&](double h) { return e1(t, x, u + h, v); }, hu);
    b.eta1_v = d1([&](double h) { return e1(t, x, u, v + h); }, hv);
    b.eta1_uu = d2([&](double h) { return e1(t, x, u + h, v); }, Hu);
    b.eta1_vv = d2([&](double h) { return e1(t, x, u, v + h); }, Hv);
    b.eta1_uv = mixed([&](double a, double b2) { return e1(t, x, u + a, v + b2); },
                      Hu, Hv);
    b.eta1_xu = mixed([&](double a, double b2) { return e1(t, x + a, u + b2, v); },
                      Hx, Hu);
    b.eta1_xv = mixed([&](double a, double b2) { return e1(t, x + a, u, v + b2); },
                      Hx, Hv);
    b.eta2_t = d1([&](double h) { return e2(t + h, x, u, v); }, ht);
    b.eta2_x = d1([&](double h) { return e2(t, x + h, u, v); }, hx);
    b.eta2_xx = d2([&](double h) { return e2(t, x + h, u, v); }, Hx);
    b.eta2_u = d1([&](double h) { return e2(t, x, u + h, v); }, hu);
    b.eta2_v = d1([&](double h) { return e2(t, x, u, v + h); }, hv);
    b.eta2_uu = d2([&](double h) { return e2(t, x, u + h, v); }, Hu);
    b.eta2_vv = d2([&](double h) { return e2(t, x, u, v + h); }, Hv);
    b.eta2_uv = mixed([&](double a, double b2) { return e2(t, x, u + a, v + b2); },
                      Hu, Hv);
    b.eta2_xu = mixed([&](double a, double b2) { return e2(t, x + a, u + b2, v); },
                      Hx, Hu);
    b.eta2_xv = mixed([&](double a, double b2) { return e2(t, x + a, u, v + b2); },
                      Hx, Hv);
    return b;
}

void check_close(const char* what, double exact, double fd, double scale) {
    const double tol = 1e-6 * std::max({1.0, std::abs(exact), scale});
    INFO(what, ": exact=", exact, " fd=", fd, " scale=", scale);
    CHECK(std::abs(exact - fd) <= tol);
}

}  // namespace

TEST_CASE("eval_f branches") {
    CHECK(eval_f(0.0, 1.0, 2.0, 3.0) == 7.0);
    CHECK(eval_f(1.0, 1.0, 1.0, 0.0) == 2.0);
    CHECK(eval_f(-1.0, 0.0, 1.0, M_PI / 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f satisfies its defining equation on [-3, 3]") {
    for (double b2 : {0.61, -0.61, 0.0}) {
        for (int i = 0; i <= 60; ++i) {
            const double x = -3.0 + 0.1 * i;
            const double r =
                eval_f_d2(b2, 0.41, -0.29, x) - b2 * eval_f(b2, 0.41, -0.29, x);
            CHECK(std::abs(r) <= 1e-10);
        }
    }
}

TEST_CASE("f derivative evaluators agree with finite differences") {
    for (double b2 : {0.61, -0.61, 0.0}) {
        for (double x : {-2.1, 0.3, 1.7}) {
            const double h = 1e-5;
            const double fd1 =
                (eval_f(b2, 0.41, -0.29, x + h) - eval_f(b2, 0.41, -0.29, x - h)) /
                (2 * h);
            CHECK(eval_f_d1(b2, 0.41, -0.29, x) ==
                  doctest::Approx(fd1).epsilon(1e-7));
        }
    }
}

TEST_CASE("operator coefficient spot values") {
    SUBCASE("Q4: eta1 = alpha u") {
        const SktParams p = canonical_case_params(3, generic_frees());
        OperatorConstants c;
        c.alpha = 3.0;
        const SymmetryOperator op = make_operator(OperatorKind::Q4, 3, p, c);
        const CoefficientBundle b = operator_coefficients(op, 0.3, 0.1, 2.0, 1.0);
        CHECK(b.eta1 == 6.0);
        CHECK(b.eta2 == 0.0);
        CHECK(b.xi == 0.0);
    }
    SUBCASE("Q13: constant shifts, all partials zero") {
        const SktParams p = canonical_case_params(12, generic_frees());
        OperatorConstants c;
        c.alpha = 0.9;
        const SymmetryOperator op = make_operator(OperatorKind::Q13, 12, p, c);
        const CoefficientBundle b = operator_coefficients(op, 1.0, -2.0, 3.0, 4.0);
        CHECK(b.eta1 == 0.9);
        CHECK(b.eta2 == 0.9);
        CHECK(b.eta1_u == 0.0);
        CHECK(b.eta2_v == 0.0);
        CHECK(b.eta2_t == 0.0);
    }
    SUBCASE("Q2: eta2 linear in v") {
        const SktParams p = canonical_case_params(2, generic_frees());
        const SymmetryOperator op = make_operator(OperatorKind::Q2, 2, p, {});
        const CoefficientBundle b = operator_coefficients(op, 0.5, 0.2, 1.0, 2.0);
        CHECK(b.eta2_v == p.a2);
        CHECK(b.eta2_vv == 0.0);
    }
}

TEST_CASE("every catalog operator's partials match finite differences") {
    std::mt19937_64 gen(42);
    auto draw = [&](double lo, double hi) {
        return lo + (hi - lo) * (gen() >> 11) * 0x1.0p-53;
    };
    for (const CasePair& pr : all_pairs()) {
        const SktParams p = canonical_case_params(pr.case_id, generic_frees());
        const SymmetryOperator op =
            make_operator(pr.kind, pr.case_id, p, generic_constants());
        for (int i = 0; i < 200; ++i) {
            const double t = draw(0.1, 2.0), x = draw(-3.0, 3.0);
            const double u = draw(0.2, 5.0), v = draw(0.2, 5.0);
            const CoefficientBundle eb = operator_coefficients(op, t, x, u, v);
            const FdBundle fb = fd_bundle(op, t, x, u, v);
            const double scale = std::max(std::abs(eb.eta1), std::abs(eb.eta2));
            INFO("case ", pr.case_id, " op ", operator_name(pr.kind), " at t=", t,
                 " x=", x, " u=", u, " v=", v);
            check_close("eta1_t", eb.eta1_t, fb.eta1_t, scale);
            check_close("eta1_x", eb.eta1_x, fb.eta1_x, scale);
            check_close("eta1_xx", eb.eta1_xx, fb.eta1_xx, scale);
            check_close("eta1_u", eb.eta1_u, fb.eta1_u, scale);
            check_close("eta1_v", eb.eta1_v, fb.eta1_v, scale);
            check_close("eta1_uu", eb.eta1_uu, fb.eta1_uu, scale);
            check_close("eta1_uv", eb.eta1_uv, fb.eta1_uv, scale);
            check_close("eta1_vv", eb.eta1_vv, fb.eta1_vv, scale);
            check_close("eta1_xu", eb.eta1_xu, fb.eta1_xu, scale);
            check_close("eta1_xv", eb.eta1_xv, fb.eta1_xv, scale);
            check_close("eta2_t", eb.eta2_t, fb.eta2_t, scale);
            check_close("eta2_x", eb.eta2_x, fb.eta2_x, scale);
            check_close("eta2_xx", eb.eta2_xx, fb.eta2_xx, scale);
            check_close("eta2_u", eb.eta2_u, fb.eta2_u, scale);
            check_close("eta2_v", eb.eta2_v, fb.eta2_v, scale);
            check_close("eta2_uu", eb.eta2_uu, fb.eta2_uu, scale);
            check_close("eta2_uv", eb.eta2_uv, fb.eta2_uv, scale);
            check_close("eta2_vv", eb.eta2_vv, fb.eta2_vv, scale);
            check_close("eta2_xu", eb.eta2_xu, fb.eta2_xu, scale);
            check_close("eta2_xv", eb.eta2_xv, fb.eta2_xv, scale);
        }
    }
}

TEST_CASE("case free values imply valid coefficients") {
    std::mt19937_64 gen(11);
    auto draw = [&](double lo, double hi) {
        return lo + (hi - lo) * (gen() >> 11) * 0x1.0p-53;
    };
    for (const CaseEntry& c : table1_cases()) {
        for (int i = 0; i < 20; ++i) {
            CaseFreeValues f;
            f.a1 = draw(0.2, 3.0);
            f.a2 = draw(0.2, 3.0);
            f.b1 = draw(0.2, 3.0);
            f.b2 = draw(0.2, 3.0);
            f.c1 = draw(0.2, 3.0);
            f.d12 = draw(0.2, 3.0);
            f.d1 = draw(0.2, 3.0);
            f.d2 = draw(0.2, 3.0);
            const SktParams p = canonical_case_params(c.case_id, f);
            CHECK(validate_params(p).ok);
            CHECK(case_shape_matches(c.case_id, p));
        }
    }
}

TEST_CASE("operator restrictions are enforced") {
    SUBCASE("Q5 needs a2 + b2 d2 != 0") {
        CaseFreeValues f = generic_frees();
        f.d2 = 1.0;
        f.b2 = 0.5;
        f.a2 = -0.5;  // a2 + b2 d2 = 0
        const SktParams p = canonical_case_params(4, f);
        CHECK_THROWS_AS(make_operator(OperatorKind::Q5, 4, p, {}), ShapeError);
    }
    SUBCASE("Q11 needs alpha0 != 0") {
        const SktParams p = canonical_case_params(9, generic_frees());
        CHECK_THROWS_AS(make_operator(OperatorKind::Q11, 9, p, {}), ShapeError);
    }
    SUBCASE("operators reject foreign case shapes") {
        const SktParams p = canonical_case_params(12, generic_frees());
        CHECK_THROWS_AS(make_operator(OperatorKind::Q1, 1, p, {}), ShapeError);
    }
}

TEST_CASE("operator domain guards name the offending expression") {
    const SktParams p = canonical_case_params(2, generic_frees());
    const SymmetryOperator op =
        make_operator(OperatorKind::Q3_0, 2, p, generic_constants());
    CHECK_THROWS_AS(operator_coefficients(op, 0.5, 0.1, 0.0, 1.0), DomainError);

    const SktParams p11 = canonical_case_params(11, generic_frees());
    const SymmetryOperator q12 =
        make_operator(OperatorKind::Q12, 11, p11, generic_constants());
    CHECK_THROWS_AS(operator_coefficients(q12, 0.0, 0.1, 1.0, 1.0), DomainError);
}
