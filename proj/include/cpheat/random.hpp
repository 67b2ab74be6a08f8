#pragma once

// Counter-based random numbers: Philox4x32-10 keyed by the seed, with one
// independent stream per (seed, stream index) pair.

#include <array>
#include <cstdint>

namespace cpheat {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// The Philox4x32 bijection with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// Inverse of the standard normal CDF by Acklam's rational approximation
/// (relative error below 1.2e-9). Requires 0 < p < 1.
double inverse_normal_cdf(double p);

/// Uniforms and normals from the blocks (block, stream) of a keyed Philox.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on the open interval (0, 1), 32-bit resolution.
  double uniform();
  /// Standard normal by inversion.
  double normal() { return inverse_normal_cdf(uniform()); }

 private:
  void refill();

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
};

}  // namespace cpheat
