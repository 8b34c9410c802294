#pragma once

#include <utility>
#include <vector>

#include "xtun/exchange.hpp"

namespace xtun {

// The occupied-orbital content of the nonlocal exchange operator. Our model
// has a single occupied partner orbital (psi_2).
struct ExchangeSource {
    Orbital psi_q;
    ExchangeKernel kernel;
};

struct HfTailResult {
    GridFunction delta_psi;
    std::pair<double, double> window;                // forbidden-region x range
    std::vector<std::pair<double, double>> ratio_series;  // (x, dpsi * x^2 / psi2)
    double flatness = 0.0;   // max/min of |ratio| over the window
    double slope = 0.0;      // log-log slope of |dpsi/psi2| vs x
};

// K(x) = psi_q(x) * integral of psi_q(x') V(x,x') psi_b(x') dx'.
GridFunction apply_exchange(const ExchangeSource& src, const GridFunction& psi_b);

// Solve (H - e) dpsi = rhs by tridiagonal elimination. The shift must stay
// clear of the spectrum; a near-singular shift raises regime_error carrying
// the offending eigenvalue distance.
GridFunction solve_inhomogeneous(const Hamiltonian& h, double e, const GridFunction& rhs);

// Variant for shifts sitting at (or near) an eigenvalue: the right-hand side
// and the solution are projected off the supplied eigenvectors, so the solve
// acts only on the orthogonal complement where (H - e) is well conditioned.
GridFunction solve_inhomogeneous_deflated(const Hamiltonian& h, double e,
                                          const GridFunction& rhs,
                                          const std::vector<const Orbital*>& deflate);

// Ratio diagnostics for the exchange-induced correction in the forbidden
// region. x is measured from `origin` (the well center of the corrected
// orbital); the window runs from the barrier-entry turning point plus
// `window_start_offset` to where |psi2| falls to 1e-6 of its peak.
HfTailResult tail_analysis(const GridFunction& delta_psi, const Orbital& psi2,
                           const GridFunction& u, double e, double origin = 0.0,
                           double window_start_offset = 0.0);

} // namespace xtun
