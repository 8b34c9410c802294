#pragma once

#include <vector>

#include "xtun/exchange.hpp"
#include "xtun/spectrum.hpp"

namespace xtun {

// Two same-spin fermions on a coarse lattice. Kept small on purpose: the
// antisymmetric pair space has n(n-1)/2 dimensions and gets diagonalized
// exactly.
struct TwoParticleProblem {
    Grid grid;  // n <= 128
    GridFunction u;
    ExchangeKernel kernel;
    PhysicsParams params;
};

struct TwoParticleState {
    std::vector<double> amp;  // ordered pairs i < j, unit 2-norm
    double energy = 0.0;
};

// Matrix-free application of the pair-space Hamiltonian.
class TwoParticleOperator {
public:
    explicit TwoParticleOperator(const TwoParticleProblem& p);

    int dim() const { return dim_; }
    int sites() const { return n_; }
    const TwoParticleProblem& problem() const { return prob_; }

    void apply(const std::vector<double>& x, std::vector<double>& y) const;

private:
    TwoParticleProblem prob_;
    int n_ = 0;
    int dim_ = 0;
    std::vector<double> one_body_diag_;  // kinetic + U per site
    double hop_ = 0.0;                   // nearest-neighbor kinetic element
    std::vector<double> pair_diag_;      // U_i + U_j + V(x_i, x_j)
    std::vector<int> row_of_;            // pair index -> i
    std::vector<int> col_of_;            // pair index -> j

    int pair_index(int i, int j) const { return pair_base_[i] + (j - i - 1); }
    std::vector<int> pair_base_;
};

TwoParticleOperator assemble_2p(const TwoParticleProblem& p);

// Lowest k eigenpairs via Lanczos with full reorthogonalization, all-ones
// seed, fixed iteration order. Residual of each returned pair <= tol.
std::vector<TwoParticleState> solve_lowest_2p(const TwoParticleOperator& op, int k,
                                              double tol, int max_iter = 600);

TwoParticleState solve_ground_2p(const TwoParticleOperator& op, double tol);

// Normalized Slater-determinant pair vector built from two one-particle
// orbitals (grid-normalized GridFunctions).
std::vector<double> determinant_state(const GridFunction& a, const GridFunction& b);

// <pair state | pair state> in the i<j basis.
double pair_overlap(const std::vector<double>& a, const std::vector<double>& b);

// One-body reduced density matrix (n x n, row-major); trace = 2.
std::vector<double> reduced_density(const TwoParticleState& state, int n);

// Occupation <ref| rho |ref> of a one-particle reference orbital.
double right_well_occupation(const TwoParticleState& state, const Orbital& ref);

// Dense symmetric eigensolver (cyclic Jacobi) for small matrices; used for
// density-matrix spectra and as an independent check of the Lanczos path.
// Returns eigenvalues ascending; vectors (column-major) optional.
std::vector<double> dense_symmetric_eigen(std::vector<double> a, int n,
                                          std::vector<double>* vectors = nullptr);

} // namespace xtun
