#include "xtun/spectrum.hpp"

#include <cmath>

namespace xtun {

Hamiltonian assemble_hamiltonian(const GridFunction& u, const PhysicsParams& params) {
    params.validate();
    const Grid& g = u.grid;
    const double h = g.h();
    const double kin = params.hbar * params.hbar / (params.mass * h * h);
    Hamiltonian ham{g, {}, params};
    ham.matrix.diag.resize(g.n);
    ham.matrix.off.assign(g.n - 1, -0.5 * kin);
    for (int i = 0; i < g.n; ++i) ham.matrix.diag[i] = kin + u[i];
    return ham;
}

Spectrum solve_lowest(const Hamiltonian& h, int k) {
    if (k < 1 || k > h.grid.n)
        throw validation_error("solve_lowest: k out of range");
    TridiagEigenPairs pairs = lowest_eigenpairs(h.matrix, k);
    const double scale = 1.0 / std::sqrt(h.grid.h());
    Spectrum out;
    out.pairs.reserve(k);
    for (int j = 0; j < k; ++j) {
        Orbital orb;
        std::vector<double> psi = std::move(pairs.vectors[j]);
        for (double& c : psi) c *= scale;
        orb.psi = GridFunction(h.grid, std::move(psi));
        orb.energy = pairs.values[j];
        orb.label = "eigen-" + std::to_string(j);
        out.pairs.push_back(std::move(orb));
    }
    return out;
}

// Overlap of f(x) with g(-x); meaningful only on a grid symmetric about 0.
static double mirror_overlap(const GridFunction& f, const GridFunction& g) {
    const int n = f.size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f[i] * g[n - 1 - i];
    return f.grid.h() * s;
}

LocalizedPair localize_symmetric(const Spectrum& spec) {
    if (spec.pairs.size() < 2)
        throw validation_error("localize_symmetric needs at least two states");
    const Orbital& s0 = spec.pairs[0];
    const Orbital& s1 = spec.pairs[1];
    if (std::abs(s0.psi.grid.x_min + s0.psi.grid.x_max) > 1e-9 * (s0.psi.grid.x_max - s0.psi.grid.x_min))
        throw validation_error("localize_symmetric needs a grid symmetric about 0");

    // Ground state even, first excited odd; anything else means the doublet
    // picture does not apply here.
    const double p0 = mirror_overlap(s0.psi, s0.psi);
    const double p1 = mirror_overlap(s1.psi, s1.psi);
    if (p0 < 0.999 || p1 > -0.999)
        throw regime_error("localize_symmetric: lowest two states are not an even/odd doublet");

    const Grid& g = s0.psi.grid;
    GridFunction left(g), right(g);
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < g.n; ++i) {
        left[i] = r * (s0.psi[i] + s1.psi[i]);
        right[i] = r * (s0.psi[i] - s1.psi[i]);
    }
    // Gauge: make each combination positive in its own well.
    double lmass = 0.0, rmass = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double v = left[i] * left[i];
        if (g.x(i) < 0) lmass += v; else rmass += v;
    }
    if (rmass > lmass) std::swap(left.values, right.values);

    LocalizedPair out;
    out.psi_left = {std::move(left), 0.5 * (s0.energy + s1.energy), "L"};
    out.psi_right = {std::move(right), 0.5 * (s0.energy + s1.energy), "R"};
    out.tunneling.e_minus = s0.energy;
    out.tunneling.e_plus = s1.energy;
    out.tunneling.t1 = 0.5 * (s1.energy - s0.energy);
    return out;
}

ReferenceOrbitals reference_orbitals(const DoubleGaussianWell& spec,
                                     const PhysicsParams& params, const Grid& grid,
                                     int psi2_index_override) {
    if (!(spec.depth_left > spec.depth_right))
        throw validation_error("reference_orbitals requires depth_left > depth_right");
    const PotentialSpec full = spec;
    GridFunction u = sample_potential(full, params, grid);
    const auto [x_top, u_top] =
        barrier_top(u, {-0.5 * spec.separation, 0.5 * spec.separation});

    auto ground_of = [&](WellSide side, const char* label) {
        GridFunction uw = sample_potential(single_well_spec(full, side), params, grid);
        Hamiltonian hw = assemble_hamiltonian(uw, params);
        Spectrum s = solve_lowest(hw, 1);
        if (s.pairs[0].energy >= u_top)
            throw regime_error(std::string("no bound state below the barrier in well ") + label);
        Orbital orb = std::move(s.pairs[0]);
        orb.label = label;
        return orb;
    };

    ReferenceOrbitals out;
    out.psi_1L = ground_of(WellSide::left, "1L");
    out.psi_1R = ground_of(WellSide::right, "1R");
    out.e_1L = out.psi_1L.energy;
    out.e_1R = out.psi_1R.energy;

    Hamiltonian h = assemble_hamiltonian(u, params);
    int idx = psi2_index_override;
    if (idx < 0) {
        // Default rule: the highest full-well eigenstate still below the
        // barrier top.
        const int below = sturm_count(h.matrix, u_top);
        if (below == 0) throw regime_error("no double-well state below the barrier top");
        idx = below - 1;
    }
    Spectrum s = solve_lowest(h, idx + 1);
    out.psi_2 = std::move(s.pairs[idx]);
    out.psi_2.label = "2";
    return out;
}

double admixture_projection(const Orbital& ground, const Orbital& psi_1R) {
    return inner_product(psi_1R.psi, ground.psi);
}

} // namespace xtun
