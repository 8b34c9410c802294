#include "xtun/exchange.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace xtun {

void ExchangeKernel::validate() const {
    if (!(e2 > 0.0)) throw validation_error("kernel.e2 must be positive");
    if (!(soft > 0.0)) throw validation_error("kernel.soft must be positive");
}

double ExchangeKernel::operator()(double x, double xp) const {
    const double d = x - xp;
    return e2 / std::sqrt(d * d + soft * soft);
}

// Double trapezoid over the grid with an optional stride; stride 2 reuses
// every other sample for the Richardson comparison.
static double double_sum(const GridFunction& bra_a, const GridFunction& bra_b,
                         const GridFunction& ket_a, const GridFunction& ket_b,
                         const ExchangeKernel& kernel, int stride) {
    const Grid& g = bra_a.grid;
    const double h = g.h() * stride;
    double total = 0.0;
    for (int i = 0; i < g.n; i += stride) {
        const double wi = bra_a[i] * bra_b[i];
        if (wi == 0.0) continue;
        const double xi = g.x(i);
        double row = 0.0;
        for (int j = 0; j < g.n; j += stride)
            row += kernel(xi, g.x(j)) * ket_a[j] * ket_b[j];
        total += wi * row;
    }
    return h * h * total;
}

ExchangeIntegralResult exchange_integral(const Orbital& psi2, const Orbital& psi1L,
                                         const Orbital& psi1R,
                                         const ExchangeKernel& kernel) {
    kernel.validate();
    if (!(psi2.psi.grid == psi1L.psi.grid) || !(psi2.psi.grid == psi1R.psi.grid))
        throw validation_error("exchange_integral: orbitals on different grids");

    ExchangeIntegralResult out;
    out.g = double_sum(psi2.psi, psi1L.psi, psi1R.psi, psi2.psi, kernel, 1);
    const double coarse = double_sum(psi2.psi, psi1L.psi, psi1R.psi, psi2.psi, kernel, 2);
    // Trapezoid converges at second order, so the true error of the fine sum
    // is about a third of the fine/coarse difference.
    out.est_error = std::abs(out.g - coarse) / 3.0;
    out.orbitals_used = psi2.label + "," + psi1L.label + ";" + psi1R.label + "," + psi2.label;
    return out;
}

AdmixtureResult admixture_bg1(const ExchangeIntegralResult& g, double e1L, double e1R) {
    const double detuning = e1L - e1R;
    const double scale = std::max(std::abs(e1L), std::abs(e1R));
    if (std::abs(detuning) < 1e3 * std::numeric_limits<double>::epsilon() * scale)
        throw regime_error("admixture_bg1: degenerate detuning");
    return {g.g / detuning, g.g, detuning};
}

MultipoleResult multipole_leading(const Orbital& psi2, const Orbital& psi1_full,
                                  const Orbital& psi1R, const ExchangeKernel& kernel,
                                  double l) {
    if (!(l > 0.0)) throw validation_error("multipole_leading: l must be positive");
    const double ortho = inner_product(psi2.psi, psi1_full.psi);
    if (std::abs(ortho) > 1e-8)
        throw validation_error("multipole_leading: psi1 and psi2 are not orthogonal");

    MultipoleResult out;
    // Constant-kernel truncation V ~ e2/l factorizes the double integral.
    out.monopole = (kernel.e2 / l) * ortho * inner_product(psi1R.psi, psi2.psi);
    const double g = exchange_integral(psi2, psi1_full, psi1R, kernel).g;
    out.residual_ratio = (g != 0.0) ? std::abs(out.monopole) / std::abs(g)
                                    : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace xtun
