#pragma once

#include <optional>
#include <string>

namespace nslab {

/// Outcome of a sampled certificate: the worst (largest) value of the
/// certified expression, where it occurred, and the verdict.
struct MarginReport {
  std::string lemma;
  long samples = 0;
  double worst_value = 0.0;
  double worst_location = 0.0;
  std::optional<double> fitted_exponent;
  bool pass = false;
  std::string detail;
};

}  // namespace nslab
