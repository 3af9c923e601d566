#pragma once

#include <cmath>

namespace skt {

/// Second-order space-time jet of a scalar field g(t,x): the value together
/// with g_t, g_x and g_xx. Arithmetic on jets propagates the exact product,
/// quotient and chain rules, so closed-form solution formulas assembled from
/// these primitives carry analytic derivatives (no finite differencing).
struct PointJet {
    double v = 0.0;    // g
    double dt = 0.0;   // g_t
    double dx = 0.0;   // g_x
    double dxx = 0.0;  // g_xx
};

constexpr PointJet jconst(double c) { return {c, 0.0, 0.0, 0.0}; }
constexpr PointJet jtime(double t) { return {t, 1.0, 0.0, 0.0}; }
constexpr PointJet jspace(double x) { return {x, 0.0, 1.0, 0.0}; }

constexpr PointJet operator+(const PointJet& a, const PointJet& b) {
    return {a.v + b.v, a.dt + b.dt, a.dx + b.dx, a.dxx + b.dxx};
}

constexpr PointJet operator-(const PointJet& a, const PointJet& b) {
    return {a.v - b.v, a.dt - b.dt, a.dx - b.dx, a.dxx - b.dxx};
}

constexpr PointJet operator-(const PointJet& a) {
    return {-a.v, -a.dt, -a.dx, -a.dxx};
}

constexpr PointJet operator*(const PointJet& a, const PointJet& b) {
    return {a.v * b.v,
            a.dt * b.v + a.v * b.dt,
            a.dx * b.v + a.v * b.dx,
            a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx};
}

constexpr PointJet operator/(const PointJet& a, const PointJet& b) {
    const double w = b.v;
    return {a.v / w,
            (a.dt * w - a.v * b.dt) / (w * w),
            (a.dx * w - a.v * b.dx) / (w * w),
            (a.dxx * w * w - a.v * b.dxx * w - 2.0 * a.dx * b.dx * w +
             2.0 * a.v * b.dx * b.dx) /
                (w * w * w)};
}

constexpr PointJet operator*(double c, const PointJet& a) {
    return {c * a.v, c * a.dt, c * a.dx, c * a.dxx};
}
constexpr PointJet operator*(const PointJet& a, double c) { return c * a; }
constexpr PointJet operator+(const PointJet& a, double c) {
    return {a.v + c, a.dt, a.dx, a.dxx};
}
constexpr PointJet operator+(double c, const PointJet& a) { return a + c; }
constexpr PointJet operator-(const PointJet& a, double c) { return a + (-c); }
constexpr PointJet operator-(double c, const PointJet& a) { return (-a) + c; }
constexpr PointJet operator/(const PointJet& a, double c) {
    return {a.v / c, a.dt / c, a.dx / c, a.dxx / c};
}

inline PointJet jexp(const PointJet& g) {
    const double e = std::exp(g.v);
    return {e, e * g.dt, e * g.dx, e * (g.dxx + g.dx * g.dx)};
}

inline PointJet jsin(const PointJet& g) {
    const double s = std::sin(g.v), c = std::cos(g.v);
    return {s, c * g.dt, c * g.dx, c * g.dxx - s * g.dx * g.dx};
}

inline PointJet jcos(const PointJet& g) {
    const double s = std::sin(g.v), c = std::cos(g.v);
    return {c, -s * g.dt, -s * g.dx, -s * g.dxx - c * g.dx * g.dx};
}

inline PointJet jsqrt(const PointJet& g) {
    const double s = std::sqrt(g.v);
    return {s, g.dt / (2.0 * s), g.dx / (2.0 * s),
            g.dxx / (2.0 * s) - g.dx * g.dx / (4.0 * s * s * s)};
}

/// Values and first/second derivatives of a discretizable pair (u,v)(t,x)
/// at one point: exactly the entries the PDE residuals S1, S2 and the
/// invariant-surface conditions consume.
struct Jet2 {
    double u = 0, v = 0;
    double u_t = 0, v_t = 0;
    double u_x = 0, v_x = 0;
    double u_xx = 0, v_xx = 0;
};

inline Jet2 make_jet2(const PointJet& u, const PointJet& v) {
    return {u.v, v.v, u.dt, v.dt, u.dx, v.dx, u.dxx, v.dxx};
}

}  // namespace skt
