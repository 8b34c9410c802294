#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xtun/fit.hpp"
#include "xtun/grid.hpp"
#include "xtun/tridiag.hpp"

using namespace xtun;

static GridFunction sampled(const Grid& g, double (*f)(double)) {
    GridFunction out(g);
    for (int i = 0; i < g.n; ++i) out[i] = f(g.x(i));
    return out;
}

TEST_CASE("grid point layout and validation") {
    Grid g(0.0, 1.0, 9);
    CHECK(g.h() == doctest::Approx(0.1));
    CHECK(g.x(0) == doctest::Approx(0.1));
    CHECK(g.x(8) == doctest::Approx(0.9));
    CHECK_THROWS_AS(Grid(0.0, 1.0, 2), validation_error);
    CHECK_THROWS_AS(Grid(1.0, 1.0, 10), validation_error);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(5, 0.0)), validation_error);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(9, std::nan(""))), validation_error);
}

TEST_CASE("integrate: constant function matches the closed-form trapezoid sum") {
    // With implicit zero boundaries the quadrature of f == 1 is h * n, i.e.
    // the interval length minus one spacing. That convention matches the
    // Dirichlet eigenproblem, where true states vanish at the walls.
    Grid g(0.0, 1.0, 999);
    GridFunction one(g, std::vector<double>(999, 1.0));
    CHECK(integrate(one) == doctest::Approx(g.h() * 999).epsilon(1e-12));
}

TEST_CASE("integrate: smooth closed forms") {
    Grid g(0.0, 2.0 * std::numbers::pi, 4095);
    GridFunction f = sampled(g, +[](double x) { return std::sin(x) * std::sin(x); });
    CHECK(integrate(f) == doctest::Approx(std::numbers::pi).epsilon(1e-6));

    // x(1-x) vanishes at the walls, so the implicit zero boundaries are exact.
    Grid g2(0.0, 1.0, 4095);
    GridFunction p = sampled(g2, +[](double x) { return x * (1.0 - x); });
    CHECK(integrate(p) == doctest::Approx(1.0 / 6.0).epsilon(1e-7));
}

TEST_CASE("integrate is linear and positive on nonnegative input") {
    Grid g(-1.0, 2.0, 500);
    GridFunction f = sampled(g, +[](double x) { return std::exp(-x * x); });
    GridFunction s = sampled(g, +[](double x) { return std::sin(3.0 * x); });
    GridFunction combo(g);
    for (int i = 0; i < g.n; ++i) combo[i] = 2.0 * f[i] - 0.5 * s[i];
    CHECK(integrate(combo) ==
          doctest::Approx(2.0 * integrate(f) - 0.5 * integrate(s)).epsilon(1e-12));
    CHECK(integrate(f) >= 0.0);
}

TEST_CASE("integrate converges at second order") {
    auto value = [](int n) {
        Grid g(0.0, 1.0, n);
        return integrate(sampled(g, +[](double x) { return x * (1.0 - x); }));
    };
    const double e1 = std::abs(value(512) - 1.0 / 6.0);
    const double e2 = std::abs(value(1025) - 1.0 / 6.0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("inner product: symmetry, bilinearity, grid mismatch") {
    Grid g(-3.0, 3.0, 301);
    GridFunction f = sampled(g, +[](double x) { return std::exp(-x * x / 2); });
    GridFunction h = sampled(g, +[](double x) { return x * std::exp(-x * x / 2); });
    CHECK(inner_product(f, h) == doctest::Approx(inner_product(h, f)).epsilon(1e-14));
    GridFunction fh(g);
    for (int i = 0; i < g.n; ++i) fh[i] = f[i] + 2.0 * h[i];
    CHECK(inner_product(fh, f) ==
          doctest::Approx(inner_product(f, f) + 2.0 * inner_product(h, f)).epsilon(1e-12));

    Grid other(-3.0, 3.0, 300);
    GridFunction q(other);
    CHECK_THROWS_AS(inner_product(f, q), validation_error);
}

TEST_CASE("linear fit on exact data") {
    std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 * x + 1.0);
    FitResult r = linear_fit(xs, ys);
    CHECK(r.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear fit conventions and contract violations") {
    std::vector<double> xs = {1.0, 2.0, 3.0};
    std::vector<double> flat = {5.0, 5.0, 5.0};
    FitResult r = linear_fit(xs, flat);
    CHECK(r.slope == doctest::Approx(0.0));
    CHECK(r.r2 == 1.0);  // zero residual and zero variance

    std::vector<double> same = {2.0, 2.0, 2.0};
    CHECK_THROWS_AS(linear_fit(same, flat), validation_error);
    std::vector<double> two = {1.0, 2.0};
    CHECK_THROWS_AS(linear_fit(two, two), validation_error);
    std::vector<double> mismatch = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(linear_fit(xs, mismatch), validation_error);
}

// Free-lattice Laplacian has closed-form eigenvalues 2 - 2 cos(k pi / (n+1)).
static SymTridiagonal lattice(int n) {
    SymTridiagonal t;
    t.diag.assign(n, 2.0);
    t.off.assign(n - 1, -1.0);
    return t;
}

TEST_CASE("Sturm bisection reproduces the lattice spectrum") {
    const int n = 50;
    SymTridiagonal t = lattice(n);
    std::vector<double> evs = lowest_eigenvalues(t, 5);
    for (int k = 0; k < 5; ++k) {
        const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
        CHECK(evs[k] == doctest::Approx(exact).epsilon(1e-11));
    }
    // Sturm count at a returned eigenvalue sees exactly that many below it.
    for (int k = 0; k < 5; ++k)
        CHECK(sturm_count(t, evs[k] - 1e-9) == k);
    CHECK(kth_eigenvalue(t, 3) == doctest::Approx(evs[3]).epsilon(1e-12));
}

TEST_CASE("inverse iteration eigenvectors: residual, orthogonality, sign") {
    const int n = 80;
    SymTridiagonal t = lattice(n);
    for (int i = 0; i < n; ++i) t.diag[i] += 0.01 * std::sin(0.37 * i);
    TridiagEigenPairs p = lowest_eigenpairs(t, 4);
    for (int k = 0; k < 4; ++k) {
        std::vector<double> r = tridiagonal_apply(t, p.vectors[k]);
        double res = 0.0, first = 0.0;
        for (int i = 0; i < n; ++i) {
            res += (r[i] - p.values[k] * p.vectors[k][i]) * (r[i] - p.values[k] * p.vectors[k][i]);
            if (first == 0.0 && std::abs(p.vectors[k][i]) > 1e-10) first = p.vectors[k][i];
        }
        CHECK(std::sqrt(res) < 1e-9);
        CHECK(first > 0.0);
        for (int j = 0; j < k; ++j) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += p.vectors[j][i] * p.vectors[k][i];
            CHECK(std::abs(dot) < 1e-9);
        }
    }
}

TEST_CASE("pivoted tridiagonal solve recovers a known solution") {
    const int n = 60;
    std::vector<double> lower(n - 1), upper(n - 1), diag(n), x_true(n);
    for (int i = 0; i < n; ++i) {
        diag[i] = 3.0 + std::cos(0.2 * i);
        x_true[i] = std::sin(0.5 * i);
    }
    for (int i = 0; i < n - 1; ++i) {
        lower[i] = -1.0 + 0.1 * std::sin(i);
        upper[i] = -1.0 - 0.1 * std::cos(i);
    }
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        rhs[i] = diag[i] * x_true[i];
        if (i > 0) rhs[i] += lower[i - 1] * x_true[i - 1];
        if (i + 1 < n) rhs[i] += upper[i] * x_true[i + 1];
    }
    std::vector<double> x = solve_tridiagonal(lower, diag, upper, rhs);
    for (int i = 0; i < n; ++i)
        CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-10));
}
