#include "skt/conservation.hpp"

#include <cmath>

#include "skt/errors.hpp"

namespace skt {

double ConservedWeight::phi(double t, double x) const {
    return std::exp(sign * root * x - rate * t);
}

double ConservedWeight::phi_x(double t, double x) const {
    return sign * root * phi(t, x);
}

double ConservedWeight::phi_t(double t, double x) const {
    return -rate * phi(t, x);
}

ConservedWeight conserved_weight(const SktParams& p, Species species, int sign) {
    if (p.b1 != 0.0 || p.c2 != 0.0)
        throw ShapeError("conserved form requires b1 = c2 = 0");
    if (sign != 1 && sign != -1) throw ConfigError("weight sign must be +-1");
    ConservedWeight w;
    w.species = species;
    w.sign = sign;
    if (species == Species::U) {
        if (p.d12 == 0.0) throw ShapeError("u-weight requires d12 != 0");
        if (p.c1 / p.d12 < 0.0) throw ShapeError("u-weight requires c1/d12 >= 0");
        w.root = std::sqrt(p.c1 / p.d12);
        w.rate = p.a1 + p.c1 * p.d1 / p.d12;
    } else {
        if (p.d21 == 0.0) throw ShapeError("v-weight requires d21 != 0");
        if (p.b2 / p.d21 < 0.0) throw ShapeError("v-weight requires b2/d21 >= 0");
        w.root = std::sqrt(p.b2 / p.d21);
        w.rate = p.a2 + p.b2 * p.d2 / p.d21;
    }
    return w;
}

namespace {

double trapezoid(const Eigen::ArrayXd& f, double h) {
    const int n = static_cast<int>(f.size());
    return h * (f.sum() - 0.5 * (f[0] + f[n - 1]));
}

// second-order one-sided first derivatives at the interval ends
double deriv_left(const Eigen::ArrayXd& f, double h) {
    return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
}
double deriv_right(const Eigen::ArrayXd& f, double h) {
    const int n = static_cast<int>(f.size());
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
}

}  // namespace

ConservationReport conservation_check(const SktParams& p, const Trajectory& traj,
                                      const ConservedWeight& w) {
    if (traj.states.size() < 2)
        throw ConfigError("conservation_check needs at least two stored states");
    const Grid1D& g = traj.grid;
    const double h = g.h();
    const Eigen::ArrayXd xs = g.nodes();

    auto mass_and_flux = [&](const FieldState& s, double& mass, double& flux) {
        Eigen::ArrayXd q, wq;
        if (w.species == Species::U) {
            q = s.u;
            wq = (p.d1 + p.d12 * s.v) * s.u;
        } else {
            q = s.v;
            wq = (p.d2 + p.d21 * s.u) * s.v;
        }
        Eigen::ArrayXd phi(g.n);
        for (int i = 0; i < g.n; ++i) phi[i] = w.phi(s.t, xs[i]);
        mass = trapezoid(phi * q, h);
        const double fa = w.phi(s.t, g.x_min) * deriv_left(wq, h) -
                          w.phi_x(s.t, g.x_min) * wq[0];
        const double fb = w.phi(s.t, g.x_max) * deriv_right(wq, h) -
                          w.phi_x(s.t, g.x_max) * wq[g.n - 1];
        flux = fb - fa;
    };

    ConservationReport rep;
    double m_prev = 0, f_prev = 0;
    mass_and_flux(traj.states[0], m_prev, f_prev);
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
        double m = 0, f = 0;
        mass_and_flux(traj.states[k], m, f);
        const double dt = traj.states[k].t - traj.states[k - 1].t;
        const double defect = std::abs((m - m_prev) / dt - 0.5 * (f + f_prev));
        rep.times.push_back(0.5 * (traj.states[k].t + traj.states[k - 1].t));
        rep.defects.push_back(defect);
        rep.max_defect = std::max(rep.max_defect, defect);
        m_prev = m;
        f_prev = f;
    }
    return rep;
}

}  // namespace skt
