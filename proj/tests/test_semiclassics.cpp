#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xtun/semiclassics.hpp"

using namespace xtun;

TEST_CASE("turning points of the inverted parabola") {
    Grid g(-3.0, 3.0, 3000);
    GridFunction u = sample_potential(InvertedParabolaBarrier{1.0, 2.0}, PhysicsParams{}, g);
    TurningPoints tp = find_turning_points(u, 0.0, {-3.0, 3.0});
    CHECK(tp.a == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(tp.b == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(tp.a < tp.b);
}

TEST_CASE("turning point count errors carry the count") {
    Grid g(-3.0, 3.0, 500);
    GridFunction u = sample_potential(InvertedParabolaBarrier{1.0, 2.0}, PhysicsParams{}, g);
    // Energy above the barrier: no classically forbidden region at all.
    CHECK_THROWS_AS(find_turning_points(u, 2.0, {-3.0, 3.0}), regime_error);
    try {
        find_turning_points(u, 2.0, {-3.0, 3.0});
    } catch (const regime_error& e) {
        CHECK(std::string(e.what()).find("0") != std::string::npos);
    }
    // Bracket covering only one flank sees a single sign change.
    CHECK_THROWS_AS(find_turning_points(u, 0.0, {-3.0, 0.0}), regime_error);
}

TEST_CASE("symmetric barrier gives mirrored turning points") {
    DoubleGaussianWell w{1.0, 1.0, 1.0, 6.0};
    Grid g(-8.0, 8.0, 4000);
    GridFunction u = sample_potential(w, PhysicsParams{}, g);
    // Energy between well bottom and barrier top.
    TurningPoints tp = find_turning_points(u, -0.5, {-3.0, 3.0});
    CHECK(tp.a == doctest::Approx(-tp.b).epsilon(1e-6));
}

TEST_CASE("action under the inverted parabola matches the closed form") {
    // U = u0 - k x^2 / 2 at energy e: S = pi (u0 - e) sqrt(m / k).
    const double u0 = 1.0, k = 2.0, e = 0.2;
    Grid g(-3.0, 3.0, 20000);
    PhysicsParams p;
    GridFunction u = sample_potential(InvertedParabolaBarrier{u0, k}, p, g);
    TurningPoints tp = find_turning_points(u, e, {-3.0, 3.0});
    WkbResult r = action_integral(u, e, tp, p);
    const double exact = std::numbers::pi * (u0 - e) * std::sqrt(p.mass / k);
    CHECK(r.action == doctest::Approx(exact).epsilon(1e-3));
    CHECK(r.t_estimate == doctest::Approx(std::exp(-r.action / p.hbar)));
}

TEST_CASE("steep flat-topped barrier approaches the rectangular limit") {
    // Plateau of height 2 and width 1 with steep tanh edges; at e = 1 the
    // rectangular-barrier action is sqrt(2 (2 - 1)) * 1 = sqrt(2).
    Grid g(-2.0, 2.0, 40000);
    GridFunction u(g);
    const double edge = 0.004;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        u[i] = 2.0 * 0.5 * (std::tanh((x + 0.5) / edge) - std::tanh((x - 0.5) / edge));
    }
    PhysicsParams p;
    TurningPoints tp = find_turning_points(u, 1.0, {-2.0, 2.0});
    WkbResult r = action_integral(u, 1.0, tp, p);
    CHECK(r.action == doctest::Approx(std::numbers::sqrt2).epsilon(2e-2));
}

TEST_CASE("action decreases with energy and is hbar independent") {
    Grid g(-3.0, 3.0, 8000);
    PhysicsParams p;
    GridFunction u = sample_potential(InvertedParabolaBarrier{1.0, 1.0}, PhysicsParams{}, g);
    double prev = 1e300;
    for (double e : {0.1, 0.3, 0.5, 0.7}) {
        TurningPoints tp = find_turning_points(u, e, {-3.0, 3.0});
        WkbResult r = action_integral(u, e, tp, p);
        CHECK(r.action < prev);
        prev = r.action;

        PhysicsParams p2 = p;
        p2.hbar = 0.3;
        WkbResult r2 = action_integral(u, e, tp, p2);
        CHECK(r2.action == doctest::Approx(r.action).epsilon(1e-14));
        CHECK(r2.t_estimate == doctest::Approx(std::exp(-r.action / 0.3)));
    }
}

TEST_CASE("degenerate barrier at the top gives zero action") {
    Grid g(-1.0, 1.0, 100);
    GridFunction u = sample_potential(InvertedParabolaBarrier{1.0, 1.0}, PhysicsParams{}, g);
    TurningPoints top{-1e-6, 1e-6, 1.0 - 1e-12};
    WkbResult r = action_integral(u, top.energy, top, PhysicsParams{});
    CHECK(r.action == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(r.t_estimate == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("action scales as sqrt(mass)") {
    Grid g(-3.0, 3.0, 8000);
    GridFunction u = sample_potential(InvertedParabolaBarrier{1.0, 1.0}, PhysicsParams{}, g);
    TurningPoints tp = find_turning_points(u, 0.25, {-3.0, 3.0});
    PhysicsParams p1;
    PhysicsParams p4;
    p4.mass = 4.0;
    WkbResult r1 = action_integral(u, 0.25, tp, p1);
    WkbResult r4 = action_integral(u, 0.25, tp, p4);
    CHECK(r4.action == doctest::Approx(2.0 * r1.action).epsilon(1e-12));
}
