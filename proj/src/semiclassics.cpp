#include "xtun/semiclassics.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace xtun {

TurningPoints find_turning_points(const GridFunction& u, double e,
                                  std::pair<double, double> bracket) {
    const Grid& g = u.grid;
    if (!(bracket.second > bracket.first))
        throw validation_error("find_turning_points: empty bracket");

    std::vector<double> roots;
    int prev = -1;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x < bracket.first || x > bracket.second) continue;
        if (prev >= 0) {
            const double f0 = u[prev] - e;
            const double f1 = u[i] - e;
            if ((f0 <= 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 <= 0.0)) {
                // Linear interpolation between the two samples.
                const double t = f0 / (f0 - f1);
                roots.push_back(g.x(prev) + t * g.h());
            }
        }
        prev = i;
    }
    if (roots.size() != 2)
        throw regime_error("find_turning_points: expected 2 sign changes, found " +
                           std::to_string(roots.size()));
    return {roots[0], roots[1], e};
}

WkbResult action_integral(const GridFunction& u, double e, const TurningPoints& tp,
                          const PhysicsParams& params) {
    params.validate();
    if (!(tp.b >= tp.a)) throw validation_error("action_integral: invalid turning points");
    const Grid& g = u.grid;
    const double m = params.mass;

    // Interior samples strictly inside the barrier.
    int first = -1, last = -1;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        if (x > tp.a && x < tp.b && u[i] > e) {
            if (first < 0) first = i;
            last = i;
        }
    }

    double s = 0.0;
    if (first >= 0) {
        auto p = [&](int i) { return std::sqrt(2.0 * m * std::max(u[i] - e, 0.0)); };
        for (int i = first; i < last; ++i)
            s += 0.5 * g.h() * (p(i) + p(i + 1));
        // End cells: with U - E ~ c (x - a) locally, the momentum integrates
        // in closed form to (2/3) sqrt(2m(U_k - E)) (x_k - a).
        s += (2.0 / 3.0) * p(first) * (g.x(first) - tp.a);
        s += (2.0 / 3.0) * p(last) * (tp.b - g.x(last));
    }

    WkbResult out;
    out.action = s;
    out.t_estimate = std::exp(-s / params.hbar);
    out.turning = tp;
    return out;
}

} // namespace xtun
