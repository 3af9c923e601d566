#include "skt/solver.hpp"

#include <cmath>

#include "skt/errors.hpp"

namespace skt {

Eigen::ArrayXd Grid1D::nodes() const {
    Eigen::ArrayXd xs(n);
    for (int i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
}

Grid1D make_grid(double x_min, double x_max, int n) {
    if (!(x_max > x_min)) throw ConfigError("grid needs x_max > x_min");
    if (n < 3) throw ConfigError("grid needs at least 3 nodes");
    return Grid1D{x_min, x_max, n};
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Completed: return "Completed";
        case Termination::BlowupDetected: return "BlowupDetected";
        case Termination::MaxSteps: return "MaxSteps";
    }
    return "?";
}

namespace {

struct Workspace {
    Eigen::ArrayXd w1, w2, du, dv;
    Eigen::ArrayXd k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, su, sv;
};

void rhs(const SktParams& p, const Grid1D& g, const BoundarySpec& bc,
         const Eigen::ArrayXd& u, const Eigen::ArrayXd& v, Workspace& ws,
         Eigen::ArrayXd& du, Eigen::ArrayXd& dv) {
    const int n = g.n;
    const double h2 = g.h() * g.h();
    ws.w1 = (p.d1 + p.d12 * v) * u;
    ws.w2 = (p.d2 + p.d21 * u) * v;

    du.resize(n);
    dv.resize(n);
    for (int i = 1; i < n - 1; ++i) {
        du[i] = (ws.w1[i + 1] - 2.0 * ws.w1[i] + ws.w1[i - 1]) / h2;
        dv[i] = (ws.w2[i + 1] - 2.0 * ws.w2[i] + ws.w2[i - 1]) / h2;
    }
    if (std::holds_alternative<NeumannZero>(bc)) {
        du[0] = 2.0 * (ws.w1[1] - ws.w1[0]) / h2;
        dv[0] = 2.0 * (ws.w2[1] - ws.w2[0]) / h2;
        du[n - 1] = 2.0 * (ws.w1[n - 2] - ws.w1[n - 1]) / h2;
        dv[n - 1] = 2.0 * (ws.w2[n - 2] - ws.w2[n - 1]) / h2;
    } else if (std::holds_alternative<Periodic>(bc)) {
        // nodes 0 and n-1 are the same physical point
        du[0] = (ws.w1[1] - 2.0 * ws.w1[0] + ws.w1[n - 2]) / h2;
        dv[0] = (ws.w2[1] - 2.0 * ws.w2[0] + ws.w2[n - 2]) / h2;
        du[n - 1] = du[0];
        dv[n - 1] = dv[0];
    } else {
        du[0] = du[n - 1] = 0.0;  // Dirichlet nodes are pinned by imposition
        dv[0] = dv[n - 1] = 0.0;
    }
    du += u * (p.a1 - p.b1 * u - p.c1 * v);
    dv += v * (p.a2 - p.b2 * u - p.c2 * v);
}

void impose_bc(const BoundarySpec& bc, const Grid1D& g, double t,
               Eigen::ArrayXd& u, Eigen::ArrayXd& v, const SolverOptions& opt) {
    const int n = g.n;
    if (const auto* d = std::get_if<DirichletConstant>(&bc)) {
        if (opt.first_order_boundary) {
            u[0] = 0.5 * (d->Ua + u[1]);
            u[n - 1] = 0.5 * (d->Ub + u[n - 2]);
            v[0] = 0.5 * (d->Va + v[1]);
            v[n - 1] = 0.5 * (d->Vb + v[n - 2]);
        } else {
            u[0] = d->Ua;
            u[n - 1] = d->Ub;
            v[0] = d->Va;
            v[n - 1] = d->Vb;
        }
    } else if (const auto* f = std::get_if<DirichletFromFamily>(&bc)) {
        const Jet2 ja = f->field.jet(t, g.x_min);
        const Jet2 jb = f->field.jet(t, g.x_max);
        if (opt.first_order_boundary) {
            u[0] = 0.5 * (ja.u + u[1]);
            u[n - 1] = 0.5 * (jb.u + u[n - 2]);
            v[0] = 0.5 * (ja.v + v[1]);
            v[n - 1] = 0.5 * (jb.v + v[n - 2]);
        } else {
            u[0] = ja.u;
            u[n - 1] = jb.u;
            v[0] = ja.v;
            v[n - 1] = jb.v;
        }
    } else if (std::holds_alternative<Periodic>(bc)) {
        u[n - 1] = u[0];
        v[n - 1] = v[0];
    }
    // NeumannZero needs no value imposition (mirror stencil in the RHS)
}

bool state_bad(const Eigen::ArrayXd& u, const Eigen::ArrayXd& v, double threshold) {
    return !u.isFinite().all() || !v.isFinite().all() ||
           u.abs().maxCoeff() > threshold || v.abs().maxCoeff() > threshold;
}

}  // namespace

FieldState family_trace(const SolutionFamily& fam, const Grid1D& grid, double t) {
    return field_trace(field_of(fam), grid, t);
}

FieldState field_trace(const JetField& field, const Grid1D& grid, double t) {
    FieldState s;
    s.t = t;
    s.u.resize(grid.n);
    s.v.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const Jet2 j = field.jet(t, grid.x(i));
        s.u[i] = j.u;
        s.v[i] = j.v;
    }
    return s;
}

Trajectory integrate(const SktParams& p, const FieldState& init,
                     const BoundarySpec& bc, const TimeSpec& ts, const Grid1D& grid,
                     const SolverOptions& opt) {
    const ValidationResult vr = validate_params(p);
    if (!vr.ok) throw ShapeError("integrate: invalid system coefficients");
    if (init.u.size() != grid.n || init.v.size() != grid.n)
        throw ConfigError("integrate: initial state does not match the grid");

    Trajectory traj;
    traj.grid = grid;
    const double h2 = grid.h() * grid.h();

    Eigen::ArrayXd u = init.u, v = init.v;
    double t = init.t;
    impose_bc(bc, grid, t, u, v, opt);
    traj.states.push_back({t, u, v});

    Workspace ws;
    Eigen::ArrayXd uS, vS;
    long step = 0;
    while (t < ts.t_end) {
        const double coef = ((p.d1 + p.d12 * v).abs() + (p.d2 + p.d21 * u).abs())
                                .maxCoeff();
        double dt = ts.cfl_factor * h2 / std::max(coef, 1e-300);
        if (ts.dt_max) dt = std::min(dt, *ts.dt_max);
        // land on t_end exactly, balancing the final two steps so that no
        // rounding-sized micro-step is ever emitted
        const double remaining = ts.t_end - t;
        if (remaining <= dt)
            dt = remaining;
        else if (remaining <= 2.0 * dt)
            dt = 0.5 * remaining;

        if ((p.d1 + p.d12 * v).minCoeff() < 0.0 || (p.d2 + p.d21 * u).minCoeff() < 0.0) {
            traj.negative_diffusivity_flag = true;
            ++traj.negative_diffusivity_steps;
        }

        rhs(p, grid, bc, u, v, ws, ws.k1u, ws.k1v);

        uS = u + 0.5 * dt * ws.k1u;
        vS = v + 0.5 * dt * ws.k1v;
        impose_bc(bc, grid, t + 0.5 * dt, uS, vS, opt);
        rhs(p, grid, bc, uS, vS, ws, ws.k2u, ws.k2v);

        uS = u + 0.5 * dt * ws.k2u;
        vS = v + 0.5 * dt * ws.k2v;
        impose_bc(bc, grid, t + 0.5 * dt, uS, vS, opt);
        rhs(p, grid, bc, uS, vS, ws, ws.k3u, ws.k3v);

        uS = u + dt * ws.k3u;
        vS = v + dt * ws.k3v;
        impose_bc(bc, grid, t + dt, uS, vS, opt);
        rhs(p, grid, bc, uS, vS, ws, ws.k4u, ws.k4v);

        u += (dt / 6.0) * (ws.k1u + 2.0 * ws.k2u + 2.0 * ws.k3u + ws.k4u);
        v += (dt / 6.0) * (ws.k1v + 2.0 * ws.k2v + 2.0 * ws.k3v + ws.k4v);
        t += dt;
        impose_bc(bc, grid, t, u, v, opt);
        ++step;

        if (state_bad(u, v, ts.blowup_threshold)) {
            traj.states.push_back({t, u, v});
            traj.termination = Termination::BlowupDetected;
            traj.steps = step;
            return traj;
        }
        if (step % ts.store_every == 0 || t >= ts.t_end)
            traj.states.push_back({t, u, v});
        if (step >= ts.max_steps) {
            traj.termination = Termination::MaxSteps;
            traj.steps = step;
            return traj;
        }
    }
    traj.termination = Termination::Completed;
    traj.steps = step;
    return traj;
}

ConvergenceReport convergence_study(const SktParams& p, const SolutionFamily& fam,
                                    const std::vector<Grid1D>& grids, double t_end,
                                    const TimeSpec& base, const SolverOptions& opt) {
    return convergence_study(p, field_of(fam), grids, t_end, base, opt);
}

ConvergenceReport convergence_study(const SktParams& p, const JetField& field,
                                    const std::vector<Grid1D>& grids, double t_end,
                                    const TimeSpec& base, const SolverOptions& opt) {
    ConvergenceReport rep;
    for (const Grid1D& g : grids) {
        TimeSpec ts = base;
        ts.t_end = t_end;
        const FieldState init = field_trace(field, g, 0.0);
        const BoundarySpec bc = DirichletFromFamily{field};
        const Trajectory traj = integrate(p, init, bc, ts, g, opt);
        if (traj.termination != Termination::Completed)
            throw Error("convergence_study: integration did not complete");
        const FieldState& fin = traj.states.back();
        const FieldState exact = field_trace(field, g, fin.t);
        const Eigen::ArrayXd eu = (fin.u - exact.u).abs();
        const Eigen::ArrayXd ev = (fin.v - exact.v).abs();
        ConvergenceLevel lvl;
        lvl.n = g.n;
        lvl.h = g.h();
        lvl.linf = std::max(eu.maxCoeff(), ev.maxCoeff());
        lvl.l2 = std::sqrt(g.h() * (eu.square().sum() + ev.square().sum()));
        rep.levels.push_back(lvl);
    }
    rep.exact = true;
    for (const auto& lvl : rep.levels) rep.exact = rep.exact && lvl.linf < 1e-12;
    if (!rep.exact) {
        for (std::size_t k = 0; k + 1 < rep.levels.size(); ++k) {
            rep.linf_orders.push_back(
                std::log2(rep.levels[k].linf / rep.levels[k + 1].linf));
            rep.l2_orders.push_back(
                std::log2(rep.levels[k].l2 / rep.levels[k + 1].l2));
            if (rep.linf_orders.back() < 1.8) rep.flagged = true;
        }
    }
    return rep;
}

double AsymptoticsReport::sup_u_at(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t)))
            return sup_u[i];
    throw ConfigError("asymptotic probe: requested time not on the lattice");
}

AsymptoticsReport asymptotic_probe(const SktParams& p, const SolutionFamily& fam,
                                   const ProbeSpec& spec) {
    if (!is_system23_shape(p))
        throw ShapeError("asymptotic_probe requires the canonical b1=d2=0 frame");
    if (fam.tag != FamilyTag::Case1_Explicit30)
        throw ShapeError("asymptotic_probe expects the single-sine family");
    const AdmissibilityReport adm = admissible_domain(fam, spec.x);
    if (!adm.admissible)
        throw DomainError("asymptotic_probe: family inadmissible on the probe interval");

    AsymptoticsReport rep;
    for (int k = 0; k <= spec.nt; ++k) {
        const double t = spec.T * k / spec.nt;
        double su = 0, dv = 0;
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x.lo + (spec.x.hi - spec.x.lo) * i / (spec.nx - 1);
            const auto [u, v] = eval_solution(fam, t, x);
            su = std::max(su, std::abs(u));
            dv = std::max(dv, std::abs(v - p.a2));
        }
        rep.times.push_back(t);
        rep.sup_u.push_back(su);
        rep.dist_v_to_a2.push_back(dv);
    }

    const double su0 = rep.sup_u.front();
    const double suT = rep.sup_u.back();
    const double dvT = rep.dist_v_to_a2.back();
    if (suT <= 1e-3 * su0 && dvT <= 1e-3 * p.a2) {
        rep.verdict = Scenario::Extinction;
    } else if (suT >= 1e3 * su0) {
        rep.verdict = Scenario::UnboundedGrowth;
    } else {
        rep.verdict = Scenario::Coexistence;
        const double rb = std::sqrt(fam.params.b2);
        double dev = 0;
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x.lo + (spec.x.hi - spec.x.lo) * i / (spec.nx - 1);
            const double prof = fam.c.C1 * std::exp(rb * x) + fam.c.C2 * std::exp(-rb * x);
            const auto [u, v] = eval_solution(fam, spec.T, x);
            dev = std::max(dev, std::abs(u - prof) / std::max(std::abs(prof), 1e-300));
        }
        rep.limit_profile_rel_dev = dev;
        rep.limit_profile_ok = dev <= 0.10;
    }
    rep.agrees_with_classification =
        classify_scenario(p).classification == rep.verdict;
    return rep;
}

std::pair<double, double> match_case1_profile(const SktParams& p, double a, double b,
                                              double Ua, double Ub) {
    if (p.b2 <= 0) throw ShapeError("profile matching needs b2 > 0");
    const double r = std::sqrt(p.b2);
    const double ea = std::exp(r * a), eb = std::exp(r * b);
    const double det = ea / eb - eb / ea;  // 2x2 system determinant
    if (det == 0.0) throw DomainError("profile matching: singular interval");
    const double C1 = (Ua / eb - Ub / ea) / det;
    const double C2 = (Ub * ea - Ua * eb) / det;
    return {C1, C2};
}

BvpReport dirichlet_bvp_run(const SktParams& p, int k1, int k2, double Ua, double Ub,
                            double T, int n,
                            const std::optional<SolutionFamily>& init_family,
                            const TimeSpec& base) {
    if (!(k1 < k2)) throw ConfigError("dirichlet_bvp_run requires k1 < k2");
    if (!is_system23_shape(p))
        throw ShapeError("dirichlet_bvp_run requires the canonical b1=d2=0 frame");
    if (!(p.a1 + p.a2 > 0)) throw ShapeError("dirichlet_bvp_run requires a1 + a2 > 0");
    if (p.a2 * p.b2 != 0.0) {
        const double special = (p.a2 * p.c1 - p.a1 - p.b2) / (p.a2 * p.b2);
        const double scale = std::max(1.0, std::abs(special));
        if (std::abs(p.d12 - special) > 1e-12 * scale)
            throw ShapeError("dirichlet_bvp_run requires d12 at its special value");
    }

    BvpReport rep;
    const double w = std::sqrt(p.a1 + p.a2);
    rep.a = M_PI * k1 / w;
    rep.b = M_PI * k2 / w;
    const Grid1D grid = make_grid(rep.a, rep.b, n);

    FieldState init;
    if (init_family) {
        init = family_trace(*init_family, grid, 0.0);
    } else {
        init.t = 0;
        init.u.resize(grid.n);
        init.v.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            const double s = (grid.x(i) - rep.a) / (rep.b - rep.a);
            init.u[i] = Ua + (Ub - Ua) * s;
            init.v[i] = p.a2;
        }
    }
    TimeSpec ts = base;
    ts.t_end = T;
    const BoundarySpec bc = DirichletConstant{Ua, Ub, p.a2, p.a2};
    rep.trajectory = integrate(p, init, bc, ts, grid);

    double vdev = 0, err = 0;
    for (const FieldState& s : rep.trajectory.states) {
        vdev = std::max({vdev, std::abs(s.v[0] - p.a2),
                         std::abs(s.v[grid.n - 1] - p.a2)});
        if (init_family) {
            const FieldState ex = family_trace(*init_family, grid, s.t);
            err = std::max(err, std::max((s.u - ex.u).abs().maxCoeff(),
                                         (s.v - ex.v).abs().maxCoeff()));
        }
    }
    rep.max_boundary_v_dev = vdev;
    if (init_family) rep.max_err_vs_family = err;
    return rep;
}

}  // namespace skt
