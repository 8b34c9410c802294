#include "xtun/oracle2p.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace xtun {

TwoParticleOperator::TwoParticleOperator(const TwoParticleProblem& p) : prob_(p) {
    p.params.validate();
    // The kernel strength may be exactly zero here: the non-interacting limit
    // is a contract case of the oracle.
    if (!(p.kernel.soft > 0.0)) throw validation_error("kernel.soft must be positive");
    if (p.kernel.e2 < 0.0) throw validation_error("kernel.e2 must be nonnegative");
    n_ = p.grid.n;
    if (n_ > 128)
        throw validation_error("two-particle grid too fine (128 sites maximum)");
    if (!(p.u.grid == p.grid))
        throw validation_error("two-particle potential on a different grid");
    dim_ = n_ * (n_ - 1) / 2;

    const double h = p.grid.h();
    const double kin = p.params.hbar * p.params.hbar / (p.params.mass * h * h);
    hop_ = -0.5 * kin;
    one_body_diag_.resize(n_);
    for (int i = 0; i < n_; ++i) one_body_diag_[i] = kin + p.u[i];

    pair_base_.resize(n_);
    int base = 0;
    for (int i = 0; i < n_; ++i) {
        pair_base_[i] = base;
        base += n_ - i - 1;
    }

    pair_diag_.resize(dim_);
    row_of_.resize(dim_);
    col_of_.resize(dim_);
    int p_idx = 0;
    for (int i = 0; i < n_; ++i) {
        const double xi = p.grid.x(i);
        for (int j = i + 1; j < n_; ++j, ++p_idx) {
            row_of_[p_idx] = i;
            col_of_[p_idx] = j;
            pair_diag_[p_idx] =
                one_body_diag_[i] + one_body_diag_[j] + p.kernel(xi, p.grid.x(j));
        }
    }
}

void TwoParticleOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    if (static_cast<int>(x.size()) != dim_)
        throw validation_error("two-particle apply: wrong vector length");
    y.assign(dim_, 0.0);
    for (int p = 0; p < dim_; ++p) {
        const int i = row_of_[p];
        const int j = col_of_[p];
        double acc = pair_diag_[p] * x[p];
        // Nearest-neighbor hops; a hop landing on the partner site is a
        // doubly-occupied configuration and is excluded by antisymmetry.
        if (i > 0) acc += hop_ * x[pair_index(i - 1, j)];
        if (i + 1 < j) acc += hop_ * x[pair_index(i + 1, j)];
        if (j - 1 > i) acc += hop_ * x[pair_index(i, j - 1)];
        if (j + 1 < n_) acc += hop_ * x[pair_index(i, j + 1)];
        y[p] = acc;
    }
}

TwoParticleOperator assemble_2p(const TwoParticleProblem& p) {
    return TwoParticleOperator(p);
}

static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<TwoParticleState> solve_lowest_2p(const TwoParticleOperator& op, int k,
                                              double tol, int max_iter) {
    const int dim = op.dim();
    if (k < 1 || k > dim) throw validation_error("solve_lowest_2p: k out of range");
    const int m_cap = std::min(max_iter, dim);

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    basis.push_back(v);

    std::vector<double> w(dim);
    double next_beta = 0.0;
    int m = 0;
    std::vector<double> ritz;

    auto converged = [&](int steps) {
        if (steps < std::max(2 * k, 20)) return false;
        SymTridiagonal t{alpha, beta};
        TridiagEigenPairs pairs = lowest_eigenpairs(t, k);
        // Standard Lanczos residual bound: |beta_m * (last Ritz component)|.
        for (int q = 0; q < k; ++q)
            if (std::abs(next_beta * pairs.vectors[q][steps - 1]) > 0.5 * tol)
                return false;
        return true;
    };

    while (m < m_cap) {
        op.apply(basis[m], w);
        const double a = dot(w, basis[m]);
        alpha.push_back(a);
        for (size_t i = 0; i < w.size(); ++i) w[i] -= a * basis[m][i];
        if (m > 0)
            for (size_t i = 0; i < w.size(); ++i) w[i] -= beta[m - 1] * basis[m - 1][i];
        // Full reorthogonalization, twice for good measure.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                const double c = dot(w, q);
                for (size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
            }
        next_beta = std::sqrt(dot(w, w));
        ++m;
        if (next_beta < 1e-14) break;  // invariant subspace captured
        if (m % 10 == 0 && converged(m)) break;
        if (m >= m_cap) break;
        beta.push_back(next_beta);
        for (size_t i = 0; i < w.size(); ++i) w[i] /= next_beta;
        basis.push_back(w);
    }

    SymTridiagonal t{alpha, beta};
    TridiagEigenPairs pairs = lowest_eigenpairs(t, std::min<int>(k, m));
    if (static_cast<int>(pairs.values.size()) < k)
        throw regime_error("solve_lowest_2p: Krylov space exhausted before finding " +
                           std::to_string(k) + " states");

    std::vector<TwoParticleState> out(k);
    std::vector<double> y(dim), hy(dim);
    for (int q = 0; q < k; ++q) {
        std::fill(y.begin(), y.end(), 0.0);
        for (int j = 0; j < m; ++j) {
            const double c = pairs.vectors[q][j];
            for (int i = 0; i < dim; ++i) y[i] += c * basis[j][i];
        }
        double nrm = std::sqrt(dot(y, y));
        for (double& c : y) c /= nrm;
        op.apply(y, hy);
        const double e = dot(y, hy);
        double res = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double r = hy[i] - e * y[i];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res > tol)
            throw regime_error("solve_lowest_2p: not converged, residual " +
                               std::to_string(res));
        out[q].amp = y;
        out[q].energy = e;
    }
    return out;
}

TwoParticleState solve_ground_2p(const TwoParticleOperator& op, double tol) {
    return solve_lowest_2p(op, 1, tol)[0];
}

std::vector<double> determinant_state(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid))
        throw validation_error("determinant_state: grid mismatch");
    const int n = a.size();
    const double rh = std::sqrt(a.grid.h());
    std::vector<double> amp;
    amp.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            amp.push_back(rh * rh * (a[i] * b[j] - a[j] * b[i]));
    const double nrm = std::sqrt(dot(amp, amp));
    if (nrm == 0.0) throw validation_error("determinant_state: orbitals are parallel");
    for (double& c : amp) c /= nrm;
    return amp;
}

double pair_overlap(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw validation_error("pair_overlap: length mismatch");
    return dot(a, b);
}

std::vector<double> reduced_density(const TwoParticleState& state, int n) {
    if (static_cast<int>(state.amp.size()) != n * (n - 1) / 2)
        throw validation_error("reduced_density: amplitude length does not match n");
    // Expand to the full antisymmetric matrix Psi(i,j).
    std::vector<double> psi(n * n, 0.0);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p) {
            psi[i * n + j] = state.amp[p];
            psi[j * n + i] = -state.amp[p];
        }
    // rho(a,b) = sum_c Psi(a,c) Psi(b,c); trace works out to 2.
    std::vector<double> rho(n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            double s = 0.0;
            for (int c = 0; c < n; ++c) s += psi[a * n + c] * psi[b * n + c];
            rho[a * n + b] = s;
            rho[b * n + a] = s;
        }
    return rho;
}

double right_well_occupation(const TwoParticleState& state, const Orbital& ref) {
    const int n = ref.psi.size();
    std::vector<double> rho = reduced_density(state, n);
    const double rh = std::sqrt(ref.psi.grid.h());
    double occ = 0.0;
    for (int a = 0; a < n; ++a) {
        double row = 0.0;
        for (int b = 0; b < n; ++b) row += rho[a * n + b] * ref.psi[b] * rh;
        occ += ref.psi[a] * rh * row;
    }
    return occ;
}

std::vector<double> dense_symmetric_eigen(std::vector<double> a, int n,
                                          std::vector<double>* vectors) {
    if (static_cast<int>(a.size()) != n * n)
        throw validation_error("dense_symmetric_eigen: bad matrix size");
    std::vector<double> v;
    if (vectors) {
        v.assign(n * n, 0.0);
        for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i * n + i]));

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (std::sqrt(off) <= 1e-13 * std::max(scale, 1.0)) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double tsign = (theta >= 0.0) ? 1.0 : -1.0;
                const double tt = tsign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a[p * n + i], aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
                if (vectors)
                    for (int i = 0; i < n; ++i) {
                        const double vip = v[i * n + p], viq = v[i * n + q];
                        v[i * n + p] = c * vip - s * viq;
                        v[i * n + q] = s * vip + c * viq;
                    }
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a[x * n + x] < a[y * n + y]; });
    std::vector<double> evs(n);
    for (int k = 0; k < n; ++k) evs[k] = a[order[k] * n + order[k]];
    if (vectors) {
        vectors->assign(n * n, 0.0);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) (*vectors)[k * n + i] = v[i * n + order[k]];
    }
    return evs;
}

} // namespace xtun
