#pragma once

#include <vector>

#include "xtun/errors.hpp"

namespace xtun {

// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below lambda (Sturm sequence sign count).
int sturm_count(const SymTridiagonal& t, double lambda);

// k lowest eigenvalues by bisection, each bracketed to relative tolerance rel_tol.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int k,
                                       double rel_tol = 1e-12);

// Single eigenvalue of given index (0-based, ascending) without computing the
// ones below it.
double kth_eigenvalue(const SymTridiagonal& t, int k, double rel_tol = 1e-12);

struct TridiagEigenPairs {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // unit 2-norm, first nonzero component > 0
};

// Eigenvalues by Sturm bisection, eigenvectors by inverse iteration with a
// deterministic seed; clustered pairs are re-orthogonalized against each other.
TridiagEigenPairs lowest_eigenpairs(const SymTridiagonal& t, int k,
                                    double rel_tol = 1e-12);

// General tridiagonal solve (lower/diag/upper bands) with partial pivoting.
// Tolerates very ill-conditioned systems; throws only on an exactly zero pivot.
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);

// y = T x
std::vector<double> tridiagonal_apply(const SymTridiagonal& t,
                                      const std::vector<double>& x);

} // namespace xtun
