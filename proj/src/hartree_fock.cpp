#include "xtun/hartree_fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xtun/fit.hpp"

namespace xtun {

GridFunction apply_exchange(const ExchangeSource& src, const GridFunction& psi_b) {
    src.kernel.validate();
    const GridFunction& q = src.psi_q.psi;
    if (!(q.grid == psi_b.grid))
        throw validation_error("apply_exchange: grid mismatch");
    const Grid& g = q.grid;
    GridFunction out(g);
    for (int i = 0; i < g.n; ++i) {
        if (q[i] == 0.0) continue;
        const double xi = g.x(i);
        double acc = 0.0;
        for (int j = 0; j < g.n; ++j)
            acc += q[j] * src.kernel(xi, g.x(j)) * psi_b[j];
        out[i] = q[i] * g.h() * acc;
    }
    return out;
}

static GridFunction solve_shifted(const Hamiltonian& h, double e, const GridFunction& rhs) {
    const int n = h.grid.n;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = h.matrix.diag[i] - e;
    std::vector<double> x =
        solve_tridiagonal(h.matrix.off, std::move(d), h.matrix.off, rhs.values);
    return GridFunction(h.grid, std::move(x));
}

GridFunction solve_inhomogeneous(const Hamiltonian& h, double e, const GridFunction& rhs) {
    if (!(h.grid == rhs.grid))
        throw validation_error("solve_inhomogeneous: grid mismatch");
    // Check the shift against the nearby spectrum.
    const int below = sturm_count(h.matrix, e);
    const int lo = std::max(below - 1, 0);
    const int k = std::min(below + 1, h.grid.n);
    double min_dist = std::numeric_limits<double>::infinity();
    if (k > 0) {
        std::vector<double> evs = lowest_eigenvalues(h.matrix, k);
        for (int j = lo; j < k; ++j)
            min_dist = std::min(min_dist, std::abs(evs[j] - e));
    }
    double scale = 0.0;
    for (double v : h.matrix.diag) scale = std::max(scale, std::abs(v));
    if (min_dist <= 1e-8 * scale)
        throw regime_error("solve_inhomogeneous: shift within " +
                           std::to_string(min_dist) + " of an eigenvalue");
    return solve_shifted(h, e, rhs);
}

GridFunction solve_inhomogeneous_deflated(const Hamiltonian& h, double e,
                                          const GridFunction& rhs,
                                          const std::vector<const Orbital*>& deflate) {
    if (!(h.grid == rhs.grid))
        throw validation_error("solve_inhomogeneous_deflated: grid mismatch");
    auto project_off = [&](GridFunction& f) {
        for (const Orbital* orb : deflate) {
            const double c = inner_product(orb->psi, f);
            for (int i = 0; i < f.size(); ++i) f[i] -= c * orb->psi[i];
        }
    };
    GridFunction r = rhs;
    project_off(r);
    GridFunction x = solve_shifted(h, e, r);
    // The solve can leak components along the deflated directions when the
    // shifted matrix is nearly singular; project them off the result too.
    project_off(x);
    return x;
}

HfTailResult tail_analysis(const GridFunction& delta_psi, const Orbital& psi2,
                           const GridFunction& u, double e, double origin,
                           double window_start_offset) {
    const Grid& g = delta_psi.grid;
    if (!(psi2.psi.grid == g) || !(u.grid == g))
        throw validation_error("tail_analysis: grid mismatch");

    double psi2_max = 0.0;
    for (int i = 0; i < g.n; ++i) psi2_max = std::max(psi2_max, std::abs(psi2.psi[i]));
    const double floor = 1e-6 * psi2_max;

    // Barrier entry: first upward crossing of U through e to the right of the
    // origin.
    int entry = -1;
    for (int i = 1; i < g.n; ++i) {
        if (g.x(i) <= origin) continue;
        if (u[i - 1] <= e && u[i] > e) { entry = i; break; }
    }
    if (entry < 0) throw regime_error("tail_analysis: no forbidden region past the origin");
    const double x_start = g.x(entry) + window_start_offset;

    HfTailResult out;
    out.delta_psi = delta_psi;
    std::vector<double> log_x, log_ratio;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int i = entry; i < g.n && u[i] > e; ++i) {
        const double x = g.x(i);
        if (x < x_start) continue;
        if (std::abs(psi2.psi[i]) < floor) break;
        const double r = x - origin;
        if (r <= 0.0) continue;
        const double ratio = delta_psi[i] * r * r / psi2.psi[i];
        out.ratio_series.emplace_back(x, ratio);
        log_x.push_back(std::log(r));
        log_ratio.push_back(std::log(std::abs(delta_psi[i] / psi2.psi[i])));
        if (!any) { lo = std::abs(ratio); hi = std::abs(ratio); any = true; }
        lo = std::min(lo, std::abs(ratio));
        hi = std::max(hi, std::abs(ratio));
    }
    if (out.ratio_series.size() < 3)
        throw regime_error("tail_analysis: forbidden-region window is empty");

    out.window = {out.ratio_series.front().first, out.ratio_series.back().first};
    out.flatness = hi / lo;
    out.slope = linear_fit(log_x, log_ratio, "ln|dpsi/psi2| vs ln x").slope;
    return out;
}

} // namespace xtun
