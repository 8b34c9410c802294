#include "xtun/potentials.hpp"

#include <cmath>

namespace xtun {

void PhysicsParams::validate() const {
    if (!(hbar > 0.0)) throw validation_error("physics.hbar must be positive");
    if (!(mass > 0.0)) throw validation_error("physics.mass must be positive");
    if (!(e2 > 0.0)) throw validation_error("physics.e2 must be positive");
}

void validate_spec(const PotentialSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DoubleGaussianWell>) {
                if (!(s.depth_left > 0.0)) throw validation_error("potential.depth_left must be positive");
                if (!(s.depth_right > 0.0)) throw validation_error("potential.depth_right must be positive");
                if (!(s.width > 0.0)) throw validation_error("potential.width must be positive");
                if (s.separation < 0.0) throw validation_error("potential.separation must be nonnegative");
            } else if constexpr (std::is_same_v<T, GaussianWell>) {
                if (!(s.depth > 0.0)) throw validation_error("potential.depth must be positive");
                if (!(s.width > 0.0)) throw validation_error("potential.width must be positive");
            } else if constexpr (std::is_same_v<T, Harmonic>) {
                if (!(s.omega > 0.0)) throw validation_error("potential.omega must be positive");
            } else if constexpr (std::is_same_v<T, SoftCoulombWell>) {
                if (!(s.z > 0.0)) throw validation_error("potential.z must be positive");
                if (!(s.core > 0.0)) throw validation_error("potential.core must be positive");
            } else if constexpr (std::is_same_v<T, InvertedParabolaBarrier>) {
                if (!(s.k > 0.0)) throw validation_error("potential.k must be positive");
            }
        },
        spec);
}

static double gaussian_well(double x, double depth, double width, double center) {
    const double d = x - center;
    return -depth * std::exp(-d * d / (2.0 * width * width));
}

GridFunction sample_potential(const PotentialSpec& spec, const PhysicsParams& params,
                              const Grid& grid) {
    validate_spec(spec);
    params.validate();
    GridFunction u(grid);
    auto eval = [&](double x) {
        return std::visit(
            [&](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DoubleGaussianWell>) {
                    return gaussian_well(x, s.depth_left, s.width, -0.5 * s.separation)
                         + gaussian_well(x, s.depth_right, s.width, 0.5 * s.separation);
                } else if constexpr (std::is_same_v<T, GaussianWell>) {
                    return gaussian_well(x, s.depth, s.width, s.center);
                } else if constexpr (std::is_same_v<T, Harmonic>) {
                    const double d = x - s.center;
                    return 0.5 * params.mass * s.omega * s.omega * d * d;
                } else if constexpr (std::is_same_v<T, SoftCoulombWell>) {
                    const double d = x - s.center;
                    return -s.z / std::sqrt(d * d + s.core * s.core);
                } else if constexpr (std::is_same_v<T, InvertedParabolaBarrier>) {
                    return s.u0 - 0.5 * s.k * x * x;
                } else {
                    return 0.0;
                }
            },
            spec);
    };
    for (int i = 0; i < grid.n; ++i) u[i] = eval(grid.x(i));
    return u;
}

PotentialSpec single_well_spec(const PotentialSpec& spec, WellSide side) {
    const auto* dw = std::get_if<DoubleGaussianWell>(&spec);
    if (!dw) throw validation_error("single_well_spec requires a double Gaussian well");
    GaussianWell sw;
    sw.width = dw->width;
    if (side == WellSide::left) {
        sw.depth = dw->depth_left;
        sw.center = -0.5 * dw->separation;
    } else {
        sw.depth = dw->depth_right;
        sw.center = 0.5 * dw->separation;
    }
    return sw;
}

std::pair<double, double> barrier_top(const GridFunction& u,
                                      std::pair<double, double> between) {
    if (!(between.second > between.first))
        throw validation_error("barrier_top: empty interval");
    const Grid& g = u.grid;
    int best = -1;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x < between.first || x > between.second) continue;
        if (best < 0 || u[i] > u[best]) best = i;
    }
    if (best < 0) throw validation_error("barrier_top: interval contains no grid points");
    return {g.x(best), u[best]};
}

} // namespace xtun
