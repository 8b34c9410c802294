#pragma once

#include <string>
#include <utility>
#include <variant>

#include "xtun/grid.hpp"

namespace xtun {

// Physical constants of a run. Natural units: mass and e2 default to 1 and
// hbar is the usual scan parameter.
struct PhysicsParams {
    double hbar = 1.0;
    double mass = 1.0;
    double e2 = 1.0;

    void validate() const;
};

// U(x) = -depth_left exp(-(x+l/2)^2/(2w^2)) - depth_right exp(-(x-l/2)^2/(2w^2))
struct DoubleGaussianWell {
    double depth_left = 1.0;
    double depth_right = 1.0;
    double width = 1.0;
    double separation = 0.0;
};

// One isolated Gaussian well; what single_well_spec produces.
struct GaussianWell {
    double depth = 1.0;
    double width = 1.0;
    double center = 0.0;
};

// U(x) = (1/2) m omega^2 (x-center)^2
struct Harmonic {
    double omega = 1.0;
    double center = 0.0;
};

// U(x) = -z / sqrt((x-center)^2 + core^2)
struct SoftCoulombWell {
    double z = 1.0;
    double core = 1.0;
    double center = 0.0;
};

// U(x) = u0 - (1/2) k x^2
struct InvertedParabolaBarrier {
    double u0 = 1.0;
    double k = 1.0;
};

// Free particle in a box; the box is supplied by the grid boundaries.
struct ZeroPotential {};

using PotentialSpec = std::variant<DoubleGaussianWell, GaussianWell, Harmonic,
                                   SoftCoulombWell, InvertedParabolaBarrier,
                                   ZeroPotential>;

enum class WellSide { left, right };

void validate_spec(const PotentialSpec& spec);

GridFunction sample_potential(const PotentialSpec& spec, const PhysicsParams& params,
                              const Grid& grid);

// Strip one Gaussian from a double well, leaving the isolated well on the
// requested side at its original center.
PotentialSpec single_well_spec(const PotentialSpec& spec, WellSide side);

// Highest potential sample on [between.first, between.second]. Flat maxima
// resolve to the leftmost index.
std::pair<double, double> barrier_top(const GridFunction& u,
                                      std::pair<double, double> between);

} // namespace xtun
