#pragma once

#include <string>

#include "skt/jet.hpp"
#include "skt/params.hpp"

namespace skt {

/// The named equivalence/scale transformations. Each is a fixed instance of
/// the scaling group t* = g1 t, x* = g2 x, u* = g3 u, v* = g4 v (plus the
/// discrete u<->v swap), specialized to the reduction it performs.
enum class TransformId {
    Reduce24To23,  // b1=d2=0 system with free d1, d21, c2 -> canonical d1=d21=c2=1
    Reduce39To31,  // 5-coefficient competition system -> canonical one-parameter form
    Scale43,       // polymer pair system -> unit cross-diffusion frame
    Scale76,       // pre-canonical two-operator system -> d1=d12=d21=1
    Table2Case2,   // b1 -> +-1
    Table2Case5,   // b2 -> +-1
    Table2Case7,   // a2 -> +-1
    Table2Case8,   // a2 -> +-1
    Table2Case10,  // a2 -> +-1
    Swap50,        // u <-> v with coefficient relabeling
};

const char* transform_name(TransformId id);
TransformId transform_from_name(const std::string& name);

/// Scaling record connecting source- and target-system solutions:
///   u'(t, x) = u_scale * u(t_scale * t, x_scale * x)
///   v'(t, x) = v_scale * v(t_scale * t, x_scale * x)
/// where (u, v) solves the source system and (u', v') the transformed one.
/// When swap_uv is set the source components are exchanged first
/// (u' draws from v and vice versa). Maps compose by factor multiplication.
struct VarMap {
    double t_scale = 1, x_scale = 1, u_scale = 1, v_scale = 1;
    bool swap_uv = false;
};

VarMap inverse_map(const VarMap& m);

/// Composition: apply `first`, then `then` (both relative to their own frames).
VarMap compose(const VarMap& first, const VarMap& then);

/// Coefficients of the system satisfied by the VarMap image of a solution.
SktParams scaled_params(const SktParams& p, const VarMap& m);

/// Pushes a source-system jet (already evaluated at the mapped point
/// (t_scale*t, x_scale*x)) through the field/derivative scalings.
Jet2 map_jet(const VarMap& m, const Jet2& source);

struct TransformResult {
    SktParams params;  // transformed coefficients
    VarMap map;        // solution mapping source -> transformed
};

/// Applies one named transform. Throws ShapeError when p lacks the shape the
/// transform expects and DomainError on a zero divisor (e.g. c2 = 0 in
/// Reduce24To23, which admits no reduction).
TransformResult apply_named_transform(TransformId id, const SktParams& p);

}  // namespace skt
