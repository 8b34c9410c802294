#pragma once

#include <string>

#include "xtun/spectrum.hpp"

namespace xtun {

// Regularized 1D Coulomb interaction V(x, x') = e2 / sqrt((x-x')^2 + soft^2).
struct ExchangeKernel {
    double e2 = 1.0;
    double soft = 1.0;

    void validate() const;
    double operator()(double x, double xp) const;
};

struct ExchangeIntegralResult {
    double g = 0.0;          // the exchange matrix element
    double est_error = 0.0;  // Richardson estimate from coarse-grid comparison
    std::string orbitals_used;
};

struct AdmixtureResult {
    double b_g1 = 0.0;
    double g = 0.0;
    double detuning = 0.0;  // e_1L - e_1R
};

struct MultipoleResult {
    double monopole = 0.0;        // 1/l truncation of the kernel
    double residual_ratio = 0.0;  // |monopole| / |G|
};

// G = double integral of psi2(x) psi1L(x) V(x,x') psi1R(x') psi2(x').
ExchangeIntegralResult exchange_integral(const Orbital& psi2, const Orbital& psi1L,
                                         const Orbital& psi1R,
                                         const ExchangeKernel& kernel);

AdmixtureResult admixture_bg1(const ExchangeIntegralResult& g, double e1L, double e1R);

// Leading multipole term of G under the 1/l kernel truncation. Requires
// psi1_full orthogonal to psi2 (both eigenstates of one Hamiltonian); the
// orthogonality is what kills this term.
MultipoleResult multipole_leading(const Orbital& psi2, const Orbital& psi1_full,
                                  const Orbital& psi1R, const ExchangeKernel& kernel,
                                  double l);

} // namespace xtun
