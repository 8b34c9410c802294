#include "xtun/fit.hpp"

#include <cmath>

namespace xtun {

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys,
                     const std::string& axes) {
    const size_t n = xs.size();
    if (n != ys.size()) throw validation_error("linear_fit: length mismatch");
    if (n < 3) throw validation_error("linear_fit: need at least 3 points");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n; my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw validation_error("linear_fit: degenerate abscissa (all x equal)");

    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.axes = axes;
    if (syy == 0.0) {
        r.r2 = 1.0;  // constant data, zero residual
    } else {
        double ss_res = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = ys[i] - (r.intercept + r.slope * xs[i]);
            ss_res += e * e;
        }
        r.r2 = 1.0 - ss_res / syy;
    }
    return r;
}

} // namespace xtun
