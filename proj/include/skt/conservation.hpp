#pragma once

#include <vector>

#include "skt/params.hpp"
#include "skt/solver.hpp"

namespace skt {

enum class Species { U, V };

/// Exponential weight putting the b1 = c2 = 0 system in conserved form:
///   Phi = exp(+-sqrt(c1/d12) x - (a1 + c1 d1/d12) t)  for the u-equation,
///   Psi = exp(+-sqrt(b2/d21) x - (a2 + b2 d2/d21) t)  for the v-equation.
struct ConservedWeight {
    Species species = Species::U;
    int sign = +1;   // either exponent sign is admissible
    double root = 0; // sqrt(c1/d12) resp. sqrt(b2/d21)
    double rate = 0; // a1 + c1 d1/d12  resp. a2 + b2 d2/d21

    double phi(double t, double x) const;
    double phi_x(double t, double x) const;
    double phi_t(double t, double x) const;
};

/// Validates the b1 = c2 = 0 shape and the sign conditions and builds the
/// weight. Throws ShapeError when the system is not in conserved form.
ConservedWeight conserved_weight(const SktParams& p, Species species, int sign);

struct ConservationReport {
    std::vector<double> times;    // interval midpoints
    std::vector<double> defects;  // |d/dt int(Phi q) - boundary flux|
    double max_defect = 0;
};

/// Trapezoid weighted mass per stored step, centered time difference per
/// stored interval, boundary flux Phi w_x - Phi_x w with second-order
/// one-sided differences at the two endpoints, flux averaged over the
/// interval ends.
ConservationReport conservation_check(const SktParams& p, const Trajectory& traj,
                                      const ConservedWeight& w);

}  // namespace skt
