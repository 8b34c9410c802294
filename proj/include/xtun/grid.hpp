#pragma once

#include <vector>

#include "xtun/errors.hpp"

namespace xtun {

// Uniform mesh of n interior points on (x_min, x_max) with implied Dirichlet
// boundaries at the ends: x_i = x_min + (i+1)h, h = (x_max - x_min)/(n+1).
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 3;

    Grid() = default;
    Grid(double xmin, double xmax, int npts);

    double h() const { return (x_max - x_min) / (n + 1); }
    double x(int i) const { return x_min + (i + 1) * h(); }

    bool operator==(const Grid& other) const = default;
};

// A real function sampled on the interior points of a grid.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(const Grid& g, std::vector<double> v);
    explicit GridFunction(const Grid& g) : grid(g), values(g.n, 0.0) {}

    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
    int size() const { return static_cast<int>(values.size()); }
};

// Trapezoid with the implicit zero boundary values: h * sum(values).
double integrate(const GridFunction& f);

// integrate(f*g); throws if the grids differ.
double inner_product(const GridFunction& f, const GridFunction& g);

} // namespace xtun
