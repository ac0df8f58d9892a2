#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wft/variation.hpp"

namespace wft {

/// Everything one run needs. `initial` is a generator name (two-shock,
/// pure-cd, random-steps) or a path to a CSV of x,w,z samples.
struct RunConfig {
  double b = 0.0;
  double kappa = 1.0;
  double r = 0.25;

  std::int64_t nu = 10;
  double t_max = 1.0;
  std::vector<VariationExponent> s_list;  // defaults to 1/3, 1/2, 1

  std::string initial = "two-shock";
  std::uint64_t seed = 1;
  std::int64_t steps = 20;        // random-steps: number of pieces
  double amplitude_w = 0.05;      // random-steps: |w| values stay below this
  double amplitude_z = 0.08;

  std::vector<double> snapshot_times;  // defaults to t_max/2, t_max
  std::int64_t mesh_count = 256;
  std::string out_dir = "out";

  std::vector<VariationExponent> effective_s_list() const;
  std::vector<double> effective_snapshot_times() const;
};

struct ParseIssue {
  int line = 0;
  std::string field;
  std::string message;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ParseIssue> issues;

  bool ok() const { return config.has_value(); }
};

/// Flat key = value text, # comments. Unknown keys, malformed numbers and
/// range violations come back as field-level issues.
ParseResult parse_config(const std::string& text);

/// One key = value line per field, fixed order; hashing this string gives
/// the config hash stamped into every artifact.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

/// "1/3" and similar fractions parse with an exact p; plain numbers give s.
VariationExponent parse_exponent(const std::string& text);
std::string exponent_to_string(const VariationExponent& e);

}  // namespace wft
