#pragma once

#include <stdexcept>
#include <string>

namespace nslab {

/// Invalid user-supplied configuration; the message names the offending field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The linear solve failed to reach its residual contract.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nslab
