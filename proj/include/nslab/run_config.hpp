#pragma once

/// @file run_config.hpp
/// @brief Run configuration for the command-line front end: a single JSON
/// document, flag overrides applied on top, validated before any compute.

#include <cstdint>
#include <string>
#include <vector>

#include "nslab/errors.hpp"

namespace nslab {

struct ProfileSpec {
  std::string kind = "gaussian";  ///< gaussian | exp-decay
  double amplitude = 0.25;
  double center = 0.0;
  double width = 1.0;
  double rate = 1.0;  ///< exp-decay only
};

struct RunConfig {
  double grid_R = 12.0;
  int grid_nr = 769;
  int grid_ns = 129;

  std::vector<ProfileSpec> profiles;  ///< default: one 0.25 e^{-r^2} Gaussian

  long geometry_samples = 10000;
  long supersolution_samples = 1000000;
  std::vector<double> deltas = {0.25, 0.5, 0.75, 0.9, 1.0, 1.5};
  long psi_samples = 4096;

  int quadrature_levels = 4;
  bool theta_factor = true;

  /// Modulation rates as multiples of the computed threshold k*.
  std::vector<double> k_multipliers = {1.0, 2.0, 4.0};
  double f0 = 1.0;
  double nu = 1.0;
  bool show_violations = false;

  std::string out_dir = "out";
  std::uint64_t seed = 1907;

  /// Throws config_error naming the offending field.
  void validate() const;
};

/// Parses a JSON config file; unknown keys are rejected.
RunConfig load_config(const std::string& path);

/// JSON echo of a config (deterministic key order).
std::string config_to_json(const RunConfig& cfg);

}  // namespace nslab
