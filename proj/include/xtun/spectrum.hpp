#pragma once

#include <string>
#include <vector>

#include "xtun/potentials.hpp"
#include "xtun/tridiag.hpp"

namespace xtun {

// Second-order central-difference Hamiltonian with Dirichlet boundaries:
// diag_i = hbar^2/(m h^2) + U(x_i), offdiag = -hbar^2/(2 m h^2).
struct Hamiltonian {
    Grid grid;
    SymTridiagonal matrix;
    PhysicsParams params;
};

struct Orbital {
    GridFunction psi;     // normalized so integrate(psi^2) = 1
    double energy = 0.0;
    std::string label;
};

struct Spectrum {
    std::vector<Orbital> pairs;  // ascending energy
};

struct TunnelingResult {
    double t1 = 0.0;      // half splitting, >= 0
    double e_plus = 0.0;  // upper doublet level
    double e_minus = 0.0; // lower doublet level
};

struct LocalizedPair {
    Orbital psi_left;
    Orbital psi_right;
    TunnelingResult tunneling;
};

struct ReferenceOrbitals {
    Orbital psi_1L;
    Orbital psi_1R;
    Orbital psi_2;
    double e_1L = 0.0;
    double e_1R = 0.0;
};

Hamiltonian assemble_hamiltonian(const GridFunction& u, const PhysicsParams& params);

Spectrum solve_lowest(const Hamiltonian& h, int k);

// For a symmetric double well: recombine the lowest doublet into left/right
// localized states and report the splitting amplitude t1 = (E1 - E0)/2.
// Throws regime_error if the two states do not have opposite parity.
LocalizedPair localize_symmetric(const Spectrum& spec);

// Ground states of the isolated single wells (solved on the full grid) plus
// the full-double-well state psi_2 chosen nearest below the barrier top.
// An explicit eigenstate index for psi_2 may override the selection rule.
ReferenceOrbitals reference_orbitals(const DoubleGaussianWell& spec,
                                     const PhysicsParams& params, const Grid& grid,
                                     int psi2_index_override = -1);

// <psi_1R, ground>: the measured admixture coefficient.
double admixture_projection(const Orbital& ground, const Orbital& psi_1R);

} // namespace xtun
