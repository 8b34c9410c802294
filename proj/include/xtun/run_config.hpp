#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "xtun/errors.hpp"

namespace xtun {

// Load a JSON config file (empty path means "all defaults"), apply dot-path
// overrides like "physics.hbar=0.5", and validate the top-level shape.
// Unknown keys are rejected with the offending key named.
nlohmann::json load_config(const std::string& path,
                           const std::vector<std::string>& overrides);

// Execute one named pipeline and write its output (format "json" or "csv").
// Throws validation_error / regime_error; the CLI maps those to exit codes.
void run_pipeline(const std::string& subcommand, const nlohmann::json& config,
                  std::ostream& out, const std::string& format);

// The full subcommand list, for dispatch and usage text.
const std::vector<std::string>& pipeline_names();

} // namespace xtun
