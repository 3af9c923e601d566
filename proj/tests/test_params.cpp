#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "skt/errors.hpp"
#include "skt/params.hpp"
#include "skt/report_io.hpp"

using namespace skt;

namespace {

SktParams system23(double a1, double a2, double b2, double c1, double d12) {
    SktParams p;
    p.d1 = 1;
    p.d21 = 1;
    p.c2 = 1;
    p.a1 = a1;
    p.a2 = a2;
    p.b2 = b2;
    p.c1 = c1;
    p.d12 = d12;
    return p;
}

}  // namespace

TEST_CASE("validate_params accepts the canonical coupled shape") {
    SktParams p;
    p.d1 = 1; p.d2 = 0; p.d12 = 1; p.d21 = 1; p.c1 = 1; p.b2 = 1;
    const ValidationResult r = validate_params(p);
    CHECK(r.ok);
    CHECK(r.violated.empty());
    CHECK(r.nonfinite_fields.empty());
}

TEST_CASE("validate_params flags missing cross-diffusion") {
    SktParams p;
    p.d12 = 0; p.d21 = 0; p.d1 = 1; p.d2 = 1; p.c1 = 1; p.b2 = 1;
    const ValidationResult r = validate_params(p);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violated.size() == 1);
    CHECK(r.violated[0] == Restriction::CrossDiffusionPresent);
}

TEST_CASE("validate_params flags vanishing diffusion") {
    SktParams p;
    p.d1 = 0; p.d2 = 0; p.d12 = 1; p.d21 = 1; p.c1 = 1; p.b2 = 1;
    const ValidationResult r = validate_params(p);
    CHECK_FALSE(r.ok);
    bool found = false;
    for (Restriction v : r.violated) found |= (v == Restriction::DiffusionPresent);
    CHECK(found);
}

TEST_CASE("validate_params reports non-finite input distinctly") {
    SktParams p;
    p.d1 = 1; p.d12 = std::numeric_limits<double>::quiet_NaN(); p.d21 = 1;
    const ValidationResult r = validate_params(p);
    CHECK_FALSE(r.ok);
    REQUIRE(r.nonfinite_fields.size() == 1);
    CHECK(r.nonfinite_fields[0] == "d12");
    CHECK(r.violated.empty());
}

TEST_CASE("reaction terms") {
    SktParams p;
    p.a1 = 2; p.b1 = 1; p.c1 = 1;
    SUBCASE("origin vanishes") {
        const ReactionTerms f = reaction_terms(p, 0, 0);
        CHECK(f.f1 == 0.0);
        CHECK(f.f2 == 0.0);
    }
    SUBCASE("balanced point") {
        const ReactionTerms f = reaction_terms(p, 1, 1);
        CHECK(f.f1 == 0.0);  // 1*(2 - 1 - 1)
    }
    SUBCASE("the (0, a2) state of the canonical frame") {
        const SktParams q = system23(2, 1, 0.1, 3.2, 1);
        const ReactionTerms f = reaction_terms(q, 0, q.a2);
        CHECK(f.f1 == 0.0);
        CHECK(f.f2 == 0.0);
    }
}

TEST_CASE("constant steady states") {
    const SktParams p = system23(2, 1, 0.1, 3.2, 1);
    CHECK(is_constant_steady_state(p, 0.0, p.a2, 1e-12));
    CHECK(is_constant_steady_state(p, 0.0, 0.0, 1e-12));
    // F2 = 0.5 (1 - 0.5) = 0.25
    CHECK_FALSE(is_constant_steady_state(p, 0.0, 0.5, 1e-12));
}

TEST_CASE("steady-state predicate agrees with the reaction terms") {
    const SktParams p = system23(1.7, 0.9, 0.3, 2.1, 1.5);
    std::mt19937_64 gen(7);
    auto draw = [&] { return -2.0 + 6.0 * (gen() >> 11) * 0x1.0p-53; };
    const double tol = 1e-2;
    for (int i = 0; i < 1000; ++i) {
        const double u0 = draw(), v0 = draw();
        const ReactionTerms f = reaction_terms(p, u0, v0);
        const bool expect = std::abs(f.f1) <= tol && std::abs(f.f2) <= tol;
        CHECK(is_constant_steady_state(p, u0, v0, tol) == expect);
    }
}

TEST_CASE("reaction terms are exactly bilinear-quadratic in u") {
    const SktParams p = system23(2, 1, 0.1, 3.2, 1);
    for (double lam : {0.25, 0.5, 2.0, 4.0, 7.5}) {
        for (double u : {0.3, 1.7}) {
            for (double v : {0.2, 2.5}) {
                const ReactionTerms f = reaction_terms(p, lam * u, v);
                const double direct =
                    lam * u * (p.a1 - p.b1 * lam * u - p.c1 * v);
                CHECK(f.f1 == direct);
            }
        }
    }
}

TEST_CASE("params JSON round trip and unknown-key rejection") {
    const SktParams p = system23(2, 1, 0.1, 3.2, 11);
    const nlohmann::json j = params_to_json(p);
    const SktParams q = params_from_json(j);
    CHECK(q.a1 == p.a1);
    CHECK(q.d12 == p.d12);
    CHECK(q.c2 == p.c2);

    nlohmann::json bad = j;
    bad["d13"] = 1.0;
    CHECK_THROWS_WITH_AS(params_from_json(bad), "$.d13: unknown key", ConfigError);

    nlohmann::json missing = j;
    missing.erase("d21");
    CHECK_THROWS_AS(params_from_json(missing), ConfigError);
}
