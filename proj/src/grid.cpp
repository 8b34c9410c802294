#include "xtun/grid.hpp"

#include <cmath>
#include <utility>

namespace xtun {

Grid::Grid(double xmin, double xmax, int npts) : x_min(xmin), x_max(xmax), n(npts) {
    if (n < 3) throw validation_error("grid needs at least 3 interior points");
    if (!(x_max > x_min)) throw validation_error("grid needs x_max > x_min");
}

GridFunction::GridFunction(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw validation_error("grid function length does not match grid");
    for (double x : values)
        if (!std::isfinite(x)) throw validation_error("grid function has non-finite values");
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return f.grid.h() * s;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid))
        throw validation_error("inner product across incompatible grids");
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return f.grid.h() * s;
}

} // namespace xtun
