#include <doctest.h>

#include <cmath>

#include "skt/errors.hpp"
#include "skt/residuals.hpp"
#include "skt/scenario.hpp"
#include "skt/solutions.hpp"
#include "skt/transforms.hpp"

using namespace skt;

namespace {

SktParams system24_example() {
    SktParams p;
    p.d1 = 2; p.d21 = 3; p.c2 = 4; p.d12 = 5;
    p.a1 = 1; p.a2 = 1; p.c1 = 1; p.b2 = 1;
    return p;
}

}  // namespace

TEST_CASE("Reduce24To23 coefficient map and scalings") {
    const TransformResult tr =
        apply_named_transform(TransformId::Reduce24To23, system24_example());
    CHECK(tr.params.d1 == 1.0);
    CHECK(tr.params.d21 == 1.0);
    CHECK(tr.params.c2 == 1.0);
    CHECK(tr.params.d12 == doctest::Approx(5.0 / 4.0).epsilon(1e-15));
    CHECK(tr.params.a1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tr.params.a2 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tr.params.c1 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tr.params.b2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // t -> d1 t, u -> (d1/d21) u, v -> (d1/c2) v in substitution form
    CHECK(tr.map.t_scale == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tr.map.x_scale == 1.0);
    CHECK(tr.map.u_scale == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(tr.map.v_scale == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("Reduce24To23 rejects c2 = 0") {
    SktParams p = system24_example();
    p.c2 = 0;
    CHECK_THROWS_AS(apply_named_transform(TransformId::Reduce24To23, p), DomainError);
}

TEST_CASE("Table2Case2 is the identity when b1 = 1") {
    SktParams p;
    p.d1 = 1; p.d12 = 1; p.d21 = 1;
    p.a1 = 1.3; p.b1 = 1; p.a2 = 0.7; p.b2 = 0.61; p.c1 = 0.61;
    const TransformResult tr = apply_named_transform(TransformId::Table2Case2, p);
    CHECK(tr.map.t_scale == 1.0);
    CHECK(tr.map.x_scale == 1.0);
    CHECK(tr.params.b1 == 1.0);
    CHECK(tr.params.a1 == p.a1);
}

TEST_CASE("Table 2 scalings pin the designated parameter to +-1 exactly") {
    SktParams p;
    p.d1 = 1; p.d12 = 1; p.d21 = 1;
    p.a1 = 1.3; p.a2 = 0.7; p.b2 = 0.61; p.c1 = 0.61;
    SUBCASE("b1 positive") {
        p.b1 = 4.7;
        CHECK(apply_named_transform(TransformId::Table2Case2, p).params.b1 == 1.0);
    }
    SUBCASE("b1 negative") {
        p.b1 = -0.3;
        CHECK(apply_named_transform(TransformId::Table2Case2, p).params.b1 == -1.0);
    }
    SUBCASE("a2 via case 7") {
        p.a2 = 3.1;
        const TransformResult tr = apply_named_transform(TransformId::Table2Case7, p);
        CHECK(tr.params.a2 == 1.0);
        CHECK(tr.params.d12 == p.d12);  // diffusivities invariant
    }
    SUBCASE("zero divisor") {
        p.b1 = 0;
        CHECK_THROWS_AS(apply_named_transform(TransformId::Table2Case2, p),
                        DomainError);
    }
}

TEST_CASE("Scale76 normalizes d1 = d12 = d21 = 1") {
    SktParams p;
    p.d1 = 2; p.d12 = 2; p.d21 = 2;
    p.a1 = 1.1; p.b1 = 0.9; p.a2 = 0.5; p.b2 = 0.77; p.c1 = 0.77;
    const TransformResult tr = apply_named_transform(TransformId::Scale76, p);
    CHECK(tr.params.d1 == 1.0);
    CHECK(tr.params.d12 == 1.0);
    CHECK(tr.params.d21 == 1.0);
    CHECK(tr.params.b1 == doctest::Approx(0.9 / 2).epsilon(1e-15));
}

TEST_CASE("Swap50 relabels coefficients and inverts cleanly") {
    SktParams p;
    p.d1 = 1; p.d2 = 0.5; p.d12 = 2; p.d21 = 3;
    p.a1 = 1; p.a2 = 2; p.b1 = 3; p.b2 = 4; p.c1 = 5; p.c2 = 6;
    const TransformResult tr = apply_named_transform(TransformId::Swap50, p);
    CHECK(tr.params.d1 == p.d2);
    CHECK(tr.params.d12 == p.d21);
    CHECK(tr.params.a1 == p.a2);
    CHECK(tr.params.b1 == p.c2);
    CHECK(tr.params.c1 == p.b2);
    const TransformResult back =
        apply_named_transform(TransformId::Swap50, tr.params);
    CHECK(back.params.d1 == p.d1);
    CHECK(back.params.c2 == p.c2);
}

TEST_CASE("VarMap inverse and composition") {
    VarMap m{0.5, 2.0, 1.5, 3.0, false};
    const VarMap inv = inverse_map(m);
    const VarMap id = compose(m, inv);
    CHECK(id.t_scale == doctest::Approx(1.0));
    CHECK(id.x_scale == doctest::Approx(1.0));
    CHECK(id.u_scale == doctest::Approx(1.0));
    CHECK(id.v_scale == doctest::Approx(1.0));
    CHECK_FALSE(id.swap_uv);

    VarMap s;
    s.swap_uv = true;
    const VarMap ms = compose(m, s);
    CHECK(ms.swap_uv);
    CHECK(ms.u_scale == doctest::Approx(m.v_scale));
    CHECK(ms.v_scale == doctest::Approx(m.u_scale));
}

TEST_CASE("mapped solutions solve the transformed system") {
    SamplingSpec spec;
    spec.t = {0.1, 1.2};
    spec.x = {-0.8, 0.8};
    spec.count = 100;

    SUBCASE("Reduce24To23 through an exact family") {
        const SktParams p24 = system24_example();
        const TransformResult tr =
            apply_named_transform(TransformId::Reduce24To23, p24);
        FamilyConstants c;
        c.C1 = 1.0; c.C2 = 0.7; c.C3 = 0.3; c.C4 = 0.2;
        const SolutionFamily fam =
            make_family(FamilyTag::Case1_A2NonZero, tr.params, c);
        CHECK(verify_family(tr.params, fam, spec, 1e-8).pass);

        const JetField on24 = mapped_field(field_of(fam), inverse_map(tr.map));
        CHECK(verify_family(p24, on24, spec, 1e-8).pass);

        const JetField forward = mapped_field(on24, tr.map);
        CHECK(verify_family(tr.params, forward, spec, 1e-8).pass);
    }
    SUBCASE("Swap50 through the single-sine family") {
        SktParams p;
        p.d1 = 1; p.d21 = 1; p.c2 = 1; p.d12 = 1;
        p.a1 = 2; p.a2 = 1; p.b2 = 0.1; p.c1 = 3.2;
        FamilyConstants c;
        c.C1 = 3; c.C2 = 2; c.C3 = 4; c.x0 = 0;
        const SolutionFamily fam =
            make_family(FamilyTag::Case1_Explicit30, p, c);
        const TransformResult tr = apply_named_transform(TransformId::Swap50, p);
        const JetField swapped = mapped_field(field_of(fam), tr.map);
        CHECK(verify_family(tr.params, swapped, spec, 1e-8).pass);
    }
}

TEST_CASE("scenario classification") {
    SktParams p;
    p.d1 = 1; p.d21 = 1; p.c2 = 1;
    p.a1 = 2; p.a2 = 1; p.b2 = 0.1; p.c1 = 3.2;

    SUBCASE("the three caption regimes") {
        p.d12 = 1;  // gamma = -2
        ScenarioReport r = classify_scenario(p);
        CHECK(r.gamma == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(r.classification == Scenario::Extinction);

        p.d12 = 16;  // gamma = -1/2
        r = classify_scenario(p);
        CHECK(r.gamma == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(r.classification == Scenario::UnboundedGrowth);

        p.d12 = 11;  // gamma = -1 = -a2
        r = classify_scenario(p);
        CHECK(r.gamma == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(r.classification == Scenario::Coexistence);
        REQUIRE(r.d12_special.has_value());
        CHECK(*r.d12_special == doctest::Approx(11.0).epsilon(1e-13));
    }
    SUBCASE("classification is monotone across the boundary") {
        REQUIRE(p.a2 * p.b2 != 0);
        const double special = (p.a2 * p.c1 - p.a1 - p.b2) / (p.a2 * p.b2);
        int phase = 0;  // expect Extinction -> Coexistence -> UnboundedGrowth
        for (double d12 : {special - 2, special - 1e-3, special, special + 1e-3,
                           special + 2}) {
            p.d12 = d12;
            const Scenario s = classify_scenario(p).classification;
            const int rank = s == Scenario::Extinction
                                 ? 0
                                 : (s == Scenario::Coexistence ? 1 : 2);
            CHECK(rank >= phase);
            phase = rank;
        }
        CHECK(phase == 2);
    }
    SUBCASE("shape errors") {
        p.b1 = 0.1;
        CHECK_THROWS_AS(classify_scenario(p), ShapeError);
    }
}
