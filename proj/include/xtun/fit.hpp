#pragma once

#include <span>
#include <string>

#include "xtun/errors.hpp"

namespace xtun {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::string axes;  // e.g. "ln y vs 1/x"
};

// Ordinary least squares. Zero-variance ys with zero residual report r2 = 1.
FitResult linear_fit(std::span<const double> xs, std::span<const double> ys,
                     const std::string& axes = "y vs x");

} // namespace xtun
