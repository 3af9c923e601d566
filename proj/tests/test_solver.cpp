#include <doctest.h>

#include <cmath>

#include "skt/errors.hpp"
#include "skt/solver.hpp"

using namespace skt;

namespace {

SktParams fig_params(double d12) {
    SktParams p;
    p.d1 = 1; p.d21 = 1; p.c2 = 1;
    p.a1 = 2; p.a2 = 1; p.b2 = 0.1; p.c1 = 3.2;
    p.d12 = d12;
    return p;
}

SolutionFamily fig_family(double d12) {
    FamilyConstants c;
    c.C1 = 3; c.C2 = 2; c.C3 = 4; c.x0 = 0;
    return make_family(FamilyTag::Case1_Explicit30, fig_params(d12), c);
}

}  // namespace

TEST_CASE("constant steady state is preserved to rounding over 1000 steps") {
    const SktParams p = fig_params(1);
    const Grid1D grid = make_grid(-1.0, 1.0, 51);
    FieldState init;
    init.t = 0;
    init.u = Eigen::ArrayXd::Zero(grid.n);
    init.v = Eigen::ArrayXd::Constant(grid.n, p.a2);
    TimeSpec ts;
    ts.t_end = 1e9;  // stopped by the step cap
    ts.max_steps = 1000;
    const Trajectory traj = integrate(p, init, NeumannZero{}, ts, grid);
    CHECK(traj.termination == Termination::MaxSteps);
    const FieldState& fin = traj.states.back();
    CHECK(fin.u.abs().maxCoeff() <= 1e-10);
    CHECK((fin.v - p.a2).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("trajectory times increase and dt respects the parabolic bound") {
    const SktParams p = fig_params(1);
    const Grid1D grid = make_grid(-1.0, 1.0, 31);
    const SolutionFamily fam = fig_family(1);
    FieldState init = family_trace(fam, grid, 0.0);
    TimeSpec ts;
    ts.t_end = 0.002;
    ts.store_every = 1;
    const Trajectory traj =
        integrate(p, init, DirichletFromFamily{field_of(fam)}, ts, grid);
    REQUIRE(traj.states.size() >= 3);
    const double h2 = grid.h() * grid.h();
    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
        const FieldState& s = traj.states[k];
        const double dt = traj.states[k + 1].t - s.t;
        CHECK(dt > 0.0);
        const double coef =
            ((p.d1 + p.d12 * s.v).abs() + (p.d2 + p.d21 * s.u).abs()).maxCoeff();
        CHECK(dt <= ts.cfl_factor * h2 / coef * (1 + 1e-12));
    }
    CHECK(traj.states.back().t == doctest::Approx(ts.t_end).epsilon(1e-14));
}

TEST_CASE("integration is deterministic") {
    const SktParams p = fig_params(1);
    const Grid1D grid = make_grid(-1.0, 1.0, 31);
    const SolutionFamily fam = fig_family(1);
    TimeSpec ts;
    ts.t_end = 0.05;
    const FieldState init = family_trace(fam, grid, 0.0);
    const BoundarySpec bc = DirichletFromFamily{field_of(fam)};
    const Trajectory a = integrate(p, init, bc, ts, grid);
    const Trajectory b = integrate(p, init, bc, ts, grid);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        CHECK((a.states[k].u == b.states[k].u).all());
        CHECK((a.states[k].v == b.states[k].v).all());
    }
}

TEST_CASE("extinction regime decays by an order of magnitude") {
    const SktParams p = fig_params(1);  // gamma = -2 < -a2
    const SolutionFamily fam = fig_family(1);
    const Grid1D grid = make_grid(-1.0, 1.0, 51);
    const FieldState init = family_trace(fam, grid, 0.0);
    TimeSpec ts;
    ts.t_end = 2.5;
    const Trajectory traj =
        integrate(p, init, DirichletFromFamily{field_of(fam)}, ts, grid);
    CHECK(traj.termination == Termination::Completed);
    const double sup0 = init.u.abs().maxCoeff();
    const double supT = traj.states.back().u.abs().maxCoeff();
    CHECK(supT * 10.0 <= sup0);
}

TEST_CASE("growth regime expands by an order of magnitude or blows up") {
    const SktParams p = fig_params(16);  // gamma = -1/2 > -a2
    const SolutionFamily fam = fig_family(16);
    const Grid1D grid = make_grid(-1.0, 1.0, 41);
    const FieldState init = family_trace(fam, grid, 0.0);
    TimeSpec ts;
    ts.t_end = 6.0;
    const Trajectory traj =
        integrate(p, init, DirichletFromFamily{field_of(fam)}, ts, grid);
    const double sup0 = init.u.abs().maxCoeff();
    const double supT = traj.states.back().u.abs().maxCoeff();
    const bool grew = supT >= 10.0 * sup0;
    CHECK((traj.termination == Termination::BlowupDetected || grew));
}

TEST_CASE("manufactured-solution errors shrink at second order") {
    const SktParams p = fig_params(1);
    const SolutionFamily fam = fig_family(1);
    const std::vector<Grid1D> grids = {make_grid(-1, 1, 26), make_grid(-1, 1, 51)};
    const ConvergenceReport rep = convergence_study(p, fam, grids, 0.1);
    REQUIRE(rep.levels.size() == 2);
    CHECK_FALSE(rep.exact);
    CHECK(rep.levels[1].linf < rep.levels[0].linf);
    REQUIRE(rep.linf_orders.size() == 1);
    CHECK(rep.linf_orders[0] > 1.7);
    CHECK(rep.linf_orders[0] < 2.3);
    CHECK_FALSE(rep.flagged);
}

TEST_CASE("exact steady state reports as exact in the convergence study") {
    const SktParams p = fig_params(1);
    const JetField steady{[&](double, double) {
        return make_jet2(jconst(0.0), jconst(p.a2));
    }};
    const std::vector<Grid1D> grids = {make_grid(-1, 1, 11), make_grid(-1, 1, 21),
                                       make_grid(-1, 1, 41)};
    const ConvergenceReport rep = convergence_study(p, steady, grids, 0.05);
    CHECK(rep.exact);
    CHECK(rep.linf_orders.empty());  // order undefined for exact runs
    CHECK_FALSE(rep.flagged);
}

TEST_CASE("first-order boundary imposition degrades the observed order") {
    const SktParams p = fig_params(1);
    const SolutionFamily fam = fig_family(1);
    const std::vector<Grid1D> grids = {make_grid(-1, 1, 26), make_grid(-1, 1, 51)};
    SolverOptions opt;
    opt.first_order_boundary = true;
    const ConvergenceReport rep = convergence_study(p, fam, grids, 0.1, {}, opt);
    REQUIRE(rep.linf_orders.size() == 1);
    CHECK(rep.linf_orders[0] < 1.8);
    CHECK(rep.flagged);
}

TEST_CASE("asymptotic probe reproduces the three regimes") {
    ProbeSpec spec;  // T = 20, t-lattice holds t = 10
    SUBCASE("extinction") {
        const AsymptoticsReport r =
            asymptotic_probe(fig_params(1), fig_family(1), spec);
        CHECK(r.verdict == Scenario::Extinction);
        CHECK(r.agrees_with_classification);
        CHECK(r.sup_u_at(10.0) <= 1e-3 * r.sup_u.front());
    }
    SUBCASE("unbounded growth") {
        const AsymptoticsReport r =
            asymptotic_probe(fig_params(16), fig_family(16), spec);
        CHECK(r.verdict == Scenario::UnboundedGrowth);
        CHECK(r.agrees_with_classification);
    }
    SUBCASE("coexistence with the exponential limit profile") {
        const AsymptoticsReport r =
            asymptotic_probe(fig_params(11), fig_family(11), spec);
        CHECK(r.verdict == Scenario::Coexistence);
        CHECK(r.agrees_with_classification);
        CHECK(r.limit_profile_ok);
        CHECK(r.limit_profile_rel_dev <= 0.10);
    }
}

TEST_CASE("Dirichlet problem on the resonant interval") {
    SUBCASE("interval endpoints") {
        // k1 = 0, k2 = 1, a1 = 2, a2 = 1: length pi/sqrt(3)
        const SktParams p = fig_params(11);  // d12 at the special value
        const BvpReport rep = dirichlet_bvp_run(p, 0, 1, 5.0, 5.5, 0.05, 41,
                                                std::nullopt);
        CHECK(rep.b - rep.a == doctest::Approx(M_PI / std::sqrt(3.0)).epsilon(1e-14));
    }
    SUBCASE("family-seeded run pins v = a2 at the boundary") {
        const SktParams p = fig_params(11);
        const double w = std::sqrt(p.a1 + p.a2);
        const double a = 0.0, b = M_PI / w;
        const auto [C1, C2] = match_case1_profile(p, a, b, 5.0, 5.5);
        REQUIRE(C1 > 0);
        REQUIRE(C2 > 0);
        FamilyConstants c;
        c.C1 = C1; c.C2 = C2; c.C3 = 0.5; c.x0 = 0;
        REQUIRE(std::abs(c.C3) < 2 * std::sqrt(C1 * C2));
        const SolutionFamily fam =
            make_family(FamilyTag::Case1_Explicit30, p, c);
        const BvpReport rep = dirichlet_bvp_run(p, 0, 1, 5.0, 5.5, 0.3, 41, fam);
        CHECK(rep.max_boundary_v_dev <= 1e-10);  // imposed exactly
        REQUIRE(rep.max_err_vs_family.has_value());
        const double h = (rep.b - rep.a) / 40;
        CHECK(*rep.max_err_vs_family <= 50.0 * h * h);
    }
    SUBCASE("zero data stays identically zero") {
        SktParams p = fig_params(1);
        p.a2 = 0;  // a2 b2 = 0: no special-value restriction applies
        const BvpReport rep =
            dirichlet_bvp_run(p, 0, 2, 0.0, 0.0, 0.05, 31, std::nullopt);
        for (const FieldState& s : rep.trajectory.states) {
            CHECK(s.u.abs().maxCoeff() == 0.0);
            CHECK(s.v.abs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("k1 >= k2 is rejected") {
        CHECK_THROWS_AS(
            dirichlet_bvp_run(fig_params(11), 1, 1, 0, 0, 0.1, 31, std::nullopt),
            ConfigError);
    }
    SUBCASE("off-threshold d12 is rejected") {
        CHECK_THROWS_AS(
            dirichlet_bvp_run(fig_params(1), 0, 1, 0, 0, 0.1, 31, std::nullopt),
            ShapeError);
    }
}
