#pragma once

#include <stdexcept>
#include <string>

namespace xtun {

// Bad input: malformed config, contract violation by the caller.
// The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// The numbers went somewhere the method cannot follow: missing bound state,
// degenerate detuning, non-convergence, broken scan regime.
// The CLI maps this to exit code 2.
class regime_error : public std::runtime_error {
public:
    explicit regime_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace xtun
