#include "skt/transforms.hpp"

#include <cmath>
#include <utility>

#include "skt/errors.hpp"

namespace skt {

const char* transform_name(TransformId id) {
    switch (id) {
        case TransformId::Reduce24To23: return "Reduce24To23";
        case TransformId::Reduce39To31: return "Reduce39To31";
        case TransformId::Scale43: return "Scale43";
        case TransformId::Scale76: return "Scale76";
        case TransformId::Table2Case2: return "Table2Case2";
        case TransformId::Table2Case5: return "Table2Case5";
        case TransformId::Table2Case7: return "Table2Case7";
        case TransformId::Table2Case8: return "Table2Case8";
        case TransformId::Table2Case10: return "Table2Case10";
        case TransformId::Swap50: return "Swap50";
    }
    throw ConfigError("unknown transform id");
}

TransformId transform_from_name(const std::string& name) {
    for (TransformId id : {TransformId::Reduce24To23, TransformId::Reduce39To31,
                           TransformId::Scale43, TransformId::Scale76,
                           TransformId::Table2Case2, TransformId::Table2Case5,
                           TransformId::Table2Case7, TransformId::Table2Case8,
                           TransformId::Table2Case10, TransformId::Swap50})
        if (name == transform_name(id)) return id;
    throw ConfigError("unknown transform name: " + name);
}

VarMap inverse_map(const VarMap& m) {
    // swap commutes with the diagonal scalings up to exchanging the u/v factors
    VarMap inv;
    inv.t_scale = 1.0 / m.t_scale;
    inv.x_scale = 1.0 / m.x_scale;
    inv.u_scale = m.swap_uv ? 1.0 / m.v_scale : 1.0 / m.u_scale;
    inv.v_scale = m.swap_uv ? 1.0 / m.u_scale : 1.0 / m.v_scale;
    inv.swap_uv = m.swap_uv;
    return inv;
}

VarMap compose(const VarMap& first, const VarMap& then) {
    VarMap c;
    c.t_scale = first.t_scale * then.t_scale;
    c.x_scale = first.x_scale * then.x_scale;
    if (then.swap_uv) {
        c.u_scale = then.u_scale * first.v_scale;
        c.v_scale = then.v_scale * first.u_scale;
    } else {
        c.u_scale = then.u_scale * first.u_scale;
        c.v_scale = then.v_scale * first.v_scale;
    }
    c.swap_uv = first.swap_uv != then.swap_uv;
    return c;
}

static SktParams swap_relabel(const SktParams& p) {
    SktParams q;
    q.d1 = p.d2;  q.d2 = p.d1;
    q.d12 = p.d21; q.d21 = p.d12;
    q.a1 = p.a2;  q.a2 = p.a1;
    q.b1 = p.c2;  q.c2 = p.b1;
    q.c1 = p.b2;  q.b2 = p.c1;
    return q;
}

SktParams scaled_params(const SktParams& p0, const VarMap& m) {
    const SktParams p = m.swap_uv ? swap_relabel(p0) : p0;
    const double lt = m.t_scale, lx2 = m.x_scale * m.x_scale;
    const double lu = m.u_scale, lv = m.v_scale;
    SktParams q;
    q.d1 = lt * p.d1 / lx2;
    q.d2 = lt * p.d2 / lx2;
    q.d12 = lt * p.d12 / (lx2 * lv);
    q.d21 = lt * p.d21 / (lx2 * lu);
    q.a1 = lt * p.a1;
    q.a2 = lt * p.a2;
    q.b1 = lt * p.b1 / lu;
    q.b2 = lt * p.b2 / lu;
    q.c1 = lt * p.c1 / lv;
    q.c2 = lt * p.c2 / lv;
    return q;
}

Jet2 map_jet(const VarMap& m, const Jet2& src0) {
    Jet2 s = src0;
    if (m.swap_uv) {
        std::swap(s.u, s.v);
        std::swap(s.u_t, s.v_t);
        std::swap(s.u_x, s.v_x);
        std::swap(s.u_xx, s.v_xx);
    }
    Jet2 out;
    out.u = m.u_scale * s.u;
    out.v = m.v_scale * s.v;
    out.u_t = m.u_scale * m.t_scale * s.u_t;
    out.v_t = m.v_scale * m.t_scale * s.v_t;
    out.u_x = m.u_scale * m.x_scale * s.u_x;
    out.v_x = m.v_scale * m.x_scale * s.v_x;
    out.u_xx = m.u_scale * m.x_scale * m.x_scale * s.u_xx;
    out.v_xx = m.v_scale * m.x_scale * m.x_scale * s.v_xx;
    return out;
}

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw ShapeError(what);
}

void require_nonzero(double value, const char* what) {
    if (value == 0.0) throw DomainError(what);
}

bool tied(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * scale;
}

// Designated-parameter scaling of Table 2: t* = |s| t, x* = sqrt(|s|) x,
// fields untouched. Sends s to s/|s| = +-1; diffusivities are invariant.
TransformResult table2_scaling(const SktParams& p, double s, double SktParams::*field) {
    require_nonzero(s, "Table 2 scaling requires the designated parameter to be nonzero");
    VarMap m;
    m.t_scale = 1.0 / std::abs(s);
    m.x_scale = 1.0 / std::sqrt(std::abs(s));
    SktParams q = scaled_params(p, m);
    // entries invariant or canonical by construction, evaluated exactly
    q.d1 = p.d1; q.d2 = p.d2; q.d12 = p.d12; q.d21 = p.d21;
    q.*field = s / std::abs(s);
    return {q, m};
}

}  // namespace

TransformResult apply_named_transform(TransformId id, const SktParams& p) {
    switch (id) {
        case TransformId::Reduce24To23: {
            require(p.b1 == 0.0 && p.d2 == 0.0,
                    "Reduce24To23 expects b1 = d2 = 0");
            require_nonzero(p.d1, "Reduce24To23 requires d1 != 0");
            require_nonzero(p.d21, "Reduce24To23 requires d21 != 0");
            require_nonzero(p.c2, "Reduce24To23 requires c2 != 0 (not reducible otherwise)");
            VarMap m{1.0 / p.d1, 1.0, p.d21 / p.d1, p.c2 / p.d1, false};
            SktParams q = scaled_params(p, m);
            q.d1 = 1.0; q.d21 = 1.0; q.c2 = 1.0;
            return {q, m};
        }
        case TransformId::Reduce39To31: {
            const double b = p.c1;
            require(p.b1 == 0.0 && p.d2 == 0.0 && p.a2 == 0.0 && p.c2 == 0.0,
                    "Reduce39To31 expects b1 = d2 = a2 = c2 = 0");
            require_nonzero(p.d1, "Reduce39To31 requires d1 != 0");
            require_nonzero(p.d12, "Reduce39To31 requires d12 != 0");
            require_nonzero(p.d21, "Reduce39To31 requires d21 != 0");
            require_nonzero(b, "Reduce39To31 requires c1 != 0");
            require(tied(p.b2, b * p.d21 / p.d12),
                    "Reduce39To31 expects b2 = c1*d21/d12");
            require(p.d12 / b > 0.0, "Reduce39To31 requires d12/c1 > 0");
            VarMap m{p.d12 / (b * p.d1), std::sqrt(p.d12 / b),
                     p.d21 / p.d1, p.d12 / p.d1, false};
            SktParams q = scaled_params(p, m);
            q.d1 = 1.0; q.d12 = 1.0; q.d21 = 1.0; q.c1 = 1.0; q.b2 = 1.0;
            q.a2 = 0.0; q.c2 = 0.0; q.b1 = 0.0; q.d2 = 0.0;
            return {q, m};
        }
        case TransformId::Scale43: {
            require(p.b1 == 0.0 && p.c2 == 0.0 && p.d12 == p.d21 && p.c1 == p.b2,
                    "Scale43 expects b1 = c2 = 0, d12 = d21, c1 = b2");
            require_nonzero(p.c1, "Scale43 requires c1 != 0");
            require(p.d12 / p.c1 > 0.0, "Scale43 requires d12/c1 > 0");
            VarMap m{1.0, std::sqrt(p.d12 / p.c1), p.c1, p.c1, false};
            SktParams q = scaled_params(p, m);
            q.d12 = 1.0; q.d21 = 1.0; q.c1 = 1.0; q.b2 = 1.0;
            return {q, m};
        }
        case TransformId::Scale76: {
            require(p.d2 == 0.0 && p.c2 == 0.0,
                    "Scale76 expects d2 = c2 = 0");
            require_nonzero(p.d1, "Scale76 requires d1 != 0");
            require_nonzero(p.d12, "Scale76 requires d12 != 0");
            require_nonzero(p.d21, "Scale76 requires d21 != 0");
            require(tied(p.c1 * p.d21, p.d12 * p.b2),
                    "Scale76 expects c1*d21 = d12*b2");
            VarMap m{1.0 / p.d1, 1.0, p.d21 / p.d1, p.d12 / p.d1, false};
            SktParams q = scaled_params(p, m);
            q.d1 = 1.0; q.d12 = 1.0; q.d21 = 1.0;
            return {q, m};
        }
        case TransformId::Table2Case2:
            return table2_scaling(p, p.b1, &SktParams::b1);
        case TransformId::Table2Case5:
            return table2_scaling(p, p.b2, &SktParams::b2);
        case TransformId::Table2Case7:
        case TransformId::Table2Case8:
        case TransformId::Table2Case10:
            return table2_scaling(p, p.a2, &SktParams::a2);
        case TransformId::Swap50: {
            VarMap m;
            m.swap_uv = true;
            return {swap_relabel(p), m};
        }
    }
    throw ConfigError("unknown transform id");
}

}  // namespace skt
