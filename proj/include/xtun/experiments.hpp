#pragma once

#include <string>
#include <vector>

#include "xtun/exchange.hpp"
#include "xtun/fit.hpp"
#include "xtun/hartree_fock.hpp"
#include "xtun/oracle2p.hpp"
#include "xtun/semiclassics.hpp"
#include "xtun/spectrum.hpp"

namespace xtun {

// A plain numeric table, one named column per observable.
struct ScanResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Shared scan-value contract: at least 6 strictly ascending positive values.
void validate_scan_values(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Tunneling splitting vs hbar (symmetric double well).

struct SplittingScanConfig {
    DoubleGaussianWell well{1.0, 1.0, 1.0, 6.0};
    PhysicsParams base;
    double box_half_width = 10.0;
    int n = 4000;
    // Empty means: derive 8 log-spaced points from the well-bottom action S,
    // spanning S/hbar from 6 to 20.
    std::vector<double> hbar_values;
};

struct SplittingScanResult {
    ScanResult table;  // hbar, t1
    FitResult fit;     // ln t1 vs 1/hbar
    double action = 0.0;  // S at the well bottom (hbar independent)
};

SplittingScanResult scan_hbar_splitting(const SplittingScanConfig& cfg);

// ---------------------------------------------------------------------------
// Exchange integral vs well separation.
//
// At each separation the right-well depth is retuned to the avoided crossing
// (equal right-orbital weight in both members of the band-2 doublet) so the
// partner orbital stays delocalized across the barrier; otherwise it
// collapses into one well at large separation and the power law is lost.

struct DistanceScanConfig {
    double depth_left = 1.25;
    double depth_right_guess = 0.4889;  // warm start for the retuning
    double width = 0.6;
    PhysicsParams base{0.45, 1.0, 1.0};
    double kernel_soft = 1.0;
    int points_per_unit = 100;     // grid density
    double box_margin_widths = 8.0;  // box half-width = l/2 + margin*width
    std::vector<double> separations;  // empty: 10 log-spaced in [6, 18]
};

struct DistanceScanResult {
    ScanResult table;  // l, G, est_error
    FitResult fit;     // ln|G| vs ln l
    std::vector<double> tuned_depth_right;
};

DistanceScanResult scan_distance_exchange(const DistanceScanConfig& cfg);

// ---------------------------------------------------------------------------
// Oscillator ground state x plane wave overlap (suppression case 2).

struct OscillatorOverlapParams {
    double omega = 1.0;
    double p = 6.0;
    double xi0 = 0.0;  // center offset of the Gaussian, in grid units
};

// |integral of exp(-m w (x-xi0)^2 / 2hbar) exp(i p x / hbar) dx|, evaluated
// as cosine and sine quadratures in extended precision (the integrand
// cancellation exceeds double precision in the configured regime).
double overlap_case2(const OscillatorOverlapParams& params, const PhysicsParams& base,
                     double hbar, const Grid& grid);

struct Case2ScanConfig {
    OscillatorOverlapParams oscillator;
    PhysicsParams base;
    Grid grid{-6.0, 6.0, 12000};
    std::vector<double> hbar_values;  // empty: 8 linear points in [0.27, 0.345]
};

struct Case2ScanResult {
    ScanResult table;      // hbar, overlap
    FitResult fit;         // ln overlap vs 1/hbar
    double predicted_slope = 0.0;  // -p^2 / (2 m omega)
};

Case2ScanResult scan_case2(const Case2ScanConfig& cfg);

// ---------------------------------------------------------------------------
// Exchange matrix element between two high-lying states of a deep double
// well: both orbitals oscillate, the integral dies exponentially in 1/hbar
// (suppression case 1).

struct Case1ScanConfig {
    DoubleGaussianWell well{5.0, 5.0, 1.6, 7.0};
    PhysicsParams base;
    double box_half_width = 9.0;
    int n = 2400;
    double kernel_soft = 3.5;
    double energy_under = -3.0;  // under-barrier state pinned to this energy
    double energy_above = 1.0;   // above-barrier partner near this energy
    // Empty: use hbar values aligned so an eigenvalue lands exactly on
    // energy_under (removes state-selection jitter between scan points).
    std::vector<double> hbar_values;
};

struct Case1ScanResult {
    ScanResult table;  // hbar, G
    FitResult fit;     // ln|G| vs 1/hbar
};

// The alignment procedure: for each eigenvalue index in [4, 16), root-find
// the hbar in [0.15, 0.75] placing that eigenvalue at energy_under; dedupe.
std::vector<double> aligned_case1_hbars(const Case1ScanConfig& cfg);

Case1ScanResult scan_hbar_exchange_case1(const Case1ScanConfig& cfg);

// ---------------------------------------------------------------------------
// Same matrix element for a soft-Coulomb ground state whose core tracks the
// Bohr radius hbar^2/(m z): the bound orbital shrinks instead of oscillating
// and the suppression becomes a power law (case 3).

struct Case3ScanConfig {
    double z = 1.0;
    PhysicsParams base;
    double box_half_width = 10.0;
    int points_per_core = 8;  // grid spacing = core / points_per_core
    double kernel_soft = 3.0;
    int psi2_mode = 9;  // fixed box mode sin(k pi (x+L) / 2L) / sqrt(L), odd k
    // 1/hbar scan window; matched to the case-1 span for the slope comparison.
    double inv_hbar_start = 8.7;
    double inv_hbar_span = 3.1934;
    int n_points = 8;
};

struct Case3ScanResult {
    ScanResult table;     // hbar, G
    FitResult fit;        // ln|G| vs 1/hbar (semilog)
    FitResult loglog_fit; // ln|G| vs ln hbar
};

Case3ScanResult scan_hbar_exchange_case3(const Case3ScanConfig& cfg);

// ---------------------------------------------------------------------------
// Exchange-induced under-barrier tail of the ground orbital.

struct HfTailConfig {
    DoubleGaussianWell well{1.0, 0.45, 1.0, 14.0};
    PhysicsParams base{0.55, 1.0, 1.0};
    double kernel_soft = 1.0;
    double box_half_width = 17.0;
    int n = 3000;
    double window_offset_widths = 3.0;  // window starts this many well widths
                                        // past the turning point
};

struct HfTailRun {
    HfTailResult tail;
    double e1 = 0.0;
    // ln|delta_psi| - ln|psi_1| sampled across the window; the power-law tail
    // must overtake the exponential one, so this should increase.
    std::vector<std::pair<double, double>> excess_series;
};

HfTailRun hf_tail_pipeline(const HfTailConfig& cfg);

// ---------------------------------------------------------------------------
// Two-particle oracle for the exchange-assisted transfer.

struct OracleConfig {
    DoubleGaussianWell well{1.2, 1.25, 0.6, 8.0};  // right well deeper
    PhysicsParams base{0.45, 1.0, 1.0};
    double kernel_soft = 3.0;
    double e2 = 0.035;
    int n = 110;
    double box_margin_widths = 8.0;
    double tol = 1e-8;
    int n_states = 12;  // Ritz pairs searched for the target state
};

struct OracleRun {
    double e2 = 0.0;
    double energy = 0.0;            // energy of the targeted two-particle state
    double transfer = 0.0;          // <det(1R, phi) | Psi>
    double occupation = 0.0;        // <1R| rho |1R>
    double overlap_with_ref = 0.0;  // |<det(init, phi) | Psi>|
    int state_index = -1;
    double ground_energy = 0.0;     // lowest two-particle energy
};

struct OracleDiagnostics {
    double b_t1 = 0.0;       // direct-tunneling admixture <1R|psi_init>
    double g = 0.0;          // exchange integral over (phi, 1L; 1R, phi)
    double j_cross = 0.0;    // cross Hartree element (1R,1L;phi,phi)
    double e_1L = 0.0, e_1R = 0.0;
    double e0_plus_e1 = 0.0;  // one-particle E0 + E1 (non-interacting ground)
    // First-order transfer amplitude: b_t1 + e2 (j_cross - g) / (e_1L - e_1R).
    double predicted_transfer = 0.0;
};

struct OracleResult {
    OracleRun non_interacting;  // same pipeline at e2 = 0
    OracleRun interacting;
    OracleDiagnostics diag;
};

OracleResult run_oracle(const OracleConfig& cfg);

// Occupation shift vs interaction strength; the shift is quadratic in e2 to
// leading order. Fit is ln|occ(e2) - occ(0)| vs ln e2.
struct E2ScanResult {
    ScanResult table;  // e2, occupation_shift
    FitResult fit;
};

E2ScanResult scan_e2_occupation(const OracleConfig& cfg, const std::vector<double>& e2_values);

} // namespace xtun
