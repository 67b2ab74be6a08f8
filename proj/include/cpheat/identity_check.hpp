#pragma once

#include <algorithm>
#include <cmath>

namespace cpheat {

/// Two independently computed sides of an identity.
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  [[nodiscard]] double abs_diff() const { return std::abs(lhs - rhs); }
  /// |lhs - rhs| / max(1, |rhs|).
  [[nodiscard]] double scaled_diff() const {
    return abs_diff() / std::max(1.0, std::abs(rhs));
  }
};

}  // namespace cpheat
