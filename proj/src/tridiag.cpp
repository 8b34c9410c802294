#include "xtun/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xtun {

int sturm_count(const SymTridiagonal& t, double lambda) {
    const int n = t.size();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
        const double off2 = (i > 0) ? t.off[i - 1] * t.off[i - 1] : 0.0;
        // Guard against division blow-up when the previous pivot hit zero.
        if (d == 0.0) d = std::numeric_limits<double>::min();
        d = t.diag[i] - lambda - off2 / d;
        if (d < 0.0) ++count;
    }
    return count;
}

static std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
    const int n = t.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < n) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

static double bisect_eigenvalue(const SymTridiagonal& t, int idx, double glo,
                                double ghi, double scale, double rel_tol) {
    double lo = glo, hi = ghi;
    // Invariant: count(lo) <= idx < count(hi).
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(t, mid) > idx) hi = mid; else lo = mid;
        const double width = hi - lo;
        if (width <= rel_tol * std::max(std::abs(lo) + std::abs(hi), 1e-12 * scale))
            break;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int k, double rel_tol) {
    const int n = t.size();
    if (k < 1 || k > n) throw validation_error("eigenvalue count out of range");
    auto [glo, ghi] = gershgorin_bounds(t);
    const double scale = std::max(std::abs(glo), std::abs(ghi));
    std::vector<double> out(k);
    for (int idx = 0; idx < k; ++idx)
        out[idx] = bisect_eigenvalue(t, idx, glo, ghi, scale, rel_tol);
    return out;
}

double kth_eigenvalue(const SymTridiagonal& t, int k, double rel_tol) {
    if (k < 0 || k >= t.size()) throw validation_error("eigenvalue index out of range");
    auto [glo, ghi] = gershgorin_bounds(t);
    const double scale = std::max(std::abs(glo), std::abs(ghi));
    return bisect_eigenvalue(t, k, glo, ghi, scale, rel_tol);
}

std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
    const int n = static_cast<int>(diag.size());
    if (static_cast<int>(lower.size()) != n - 1 || static_cast<int>(upper.size()) != n - 1 ||
        static_cast<int>(rhs.size()) != n)
        throw validation_error("tridiagonal solve: inconsistent band lengths");

    // Partial pivoting introduces fill-in on a second superdiagonal.
    std::vector<double> upper2(n, 0.0);
    for (int i = 0; i < n - 1; ++i) {
        double* piv_row[3] = {&diag[i], &upper[i], &upper2[i]};
        double sub = lower[i];
        double row_d = diag[i + 1];
        double row_u = (i + 2 < n) ? upper[i + 1] : 0.0;
        if (std::abs(sub) > std::abs(*piv_row[0])) {
            std::swap(*piv_row[0], sub);
            std::swap(*piv_row[1], row_d);
            std::swap(*piv_row[2], row_u);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (*piv_row[0] == 0.0) throw regime_error("tridiagonal solve: zero pivot");
        const double m = sub / *piv_row[0];
        diag[i + 1] = row_d - m * *piv_row[1];
        if (i + 2 < n) upper[i + 1] = row_u - m * *piv_row[2];
        rhs[i + 1] -= m * rhs[i];
    }
    if (diag[n - 1] == 0.0) throw regime_error("tridiagonal solve: zero pivot");

    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        if (i + 1 < n) s -= upper[i] * x[i + 1];
        if (i + 2 < n) s -= upper2[i] * x[i + 2];
        x[i] = s / diag[i];
    }
    return x;
}

std::vector<double> tridiagonal_apply(const SymTridiagonal& t, const std::vector<double>& x) {
    const int n = t.size();
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = t.diag[i] * x[i];
        if (i > 0) s += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) s += t.off[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

static void normalize_and_fix_sign(std::vector<double>& v) {
    double nrm = 0.0;
    for (double c : v) nrm += c * c;
    nrm = std::sqrt(nrm);
    double sign = 1.0;
    for (double c : v) {
        if (std::abs(c) > 1e-12 * nrm) { sign = (c > 0) ? 1.0 : -1.0; break; }
    }
    const double f = sign / nrm;
    for (double& c : v) c *= f;
}

TridiagEigenPairs lowest_eigenpairs(const SymTridiagonal& t, int k, double rel_tol) {
    const int n = t.size();
    TridiagEigenPairs out;
    out.values = lowest_eigenvalues(t, k, rel_tol);
    out.vectors.reserve(k);

    auto [glo, ghi] = gershgorin_bounds(t);
    const double scale = std::max(std::abs(glo), std::abs(ghi));

    for (int idx = 0; idx < k; ++idx) {
        const double lambda = out.values[idx];
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
        for (int sweep = 0; sweep < 4; ++sweep) {
            std::vector<double> lower(t.off), upper(t.off), d(n);
            for (int i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;
            v = solve_tridiagonal(std::move(lower), std::move(d), std::move(upper), std::move(v));
            // Clustered eigenvalues: project out the partners found so far.
            for (int j = 0; j < idx; ++j) {
                if (std::abs(out.values[j] - lambda) < 1e-6 * std::max(scale, 1.0)) {
                    double dot = 0.0;
                    for (int i = 0; i < n; ++i) dot += out.vectors[j][i] * v[i];
                    for (int i = 0; i < n; ++i) v[i] -= dot * out.vectors[j][i];
                }
            }
            double nrm = 0.0;
            for (double c : v) nrm += c * c;
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) throw regime_error("inverse iteration collapsed to zero vector");
            for (double& c : v) c /= nrm;
        }
        normalize_and_fix_sign(v);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

} // namespace xtun
