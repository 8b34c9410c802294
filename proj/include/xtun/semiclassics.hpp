#pragma once

#include <utility>

#include "xtun/potentials.hpp"

namespace xtun {

struct TurningPoints {
    double a = 0.0;  // left root of U(x) = E
    double b = 0.0;  // right root, b > a
    double energy = 0.0;
};

struct WkbResult {
    double action = 0.0;      // S = integral of sqrt(2m(U-E)) over [a, b]
    double t_estimate = 1.0;  // exp(-S/hbar)
    TurningPoints turning;
};

// Locate the two roots of U(x) = e inside the bracket. Each root is the grid
// sign change refined by linear interpolation between the adjacent samples.
// Throws regime_error naming the count if the sign does not change exactly
// twice.
TurningPoints find_turning_points(const GridFunction& u, double e,
                                  std::pair<double, double> bracket);

// Under-barrier action with the endpoint square-root singularity handled by a
// local linear model of U - E on each end cell (see the notes in the
// implementation for the closed-form end-cell contribution).
WkbResult action_integral(const GridFunction& u, double e, const TurningPoints& tp,
                          const PhysicsParams& params);

} // namespace xtun
