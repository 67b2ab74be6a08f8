#pragma once

// Distributional comparison of a simulated ensemble against the series
// densities: Kolmogorov-Smirnov for k = 1, chi-square on an equal-mass grid
// for k = 2.

#include <functional>
#include <stdexcept>
#include <vector>

#include "cpheat/diffusion_sim.hpp"
#include "cpheat/heat_kernel.hpp"

namespace cpheat {

/// Raised when the ensemble is too small for the requested test.
class InsufficientSamplesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GofResult {
  double statistic = 0.0;
  double threshold = 0.0;
  double degrees_of_freedom = 0.0;  // chi-square only
  double min_expected = 0.0;        // chi-square only
  [[nodiscard]] bool pass() const { return statistic <= threshold; }
};

/// sup_x |F_n(x) - F(x)| for the empirical CDF of `samples`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// KS test of a k = 1 ensemble against the kernel's CDF. The threshold is
/// 2 * 1.63 / sqrt(paths): the 1% critical value doubled to absorb the
/// time-discretization bias. Needs at least 1000 paths.
GofResult density_ks_check(const PathEnsemble& ens, const Kernel1D& kernel);

/// Cell boundaries of the equal-mass grid in x = u1 or y = u2 / (1 - u1):
/// the stationary marginals of x and y are 1 - (1-x)^{N-1} and 1 - (1-y)^{N-2}.
std::vector<double> equal_mass_edges(int bins, double exponent);

/// Probability of each of the bins x bins cells under the kernel, by tensor
/// Gauss-Legendre in (x, y); row-major in (x cell, y cell).
std::vector<double> cell_probabilities(const Kernel2D& kernel, int bins);

/// Pearson chi-square of a k = 2 ensemble over bins x bins cells, against
/// the 99th percentile of chi-square with bins^2 - 1 degrees of freedom.
/// Throws InsufficientSamplesError if an expected count is below 5.
GofResult density_chi_square_check(const PathEnsemble& ens, const Kernel2D& kernel, int bins);

}  // namespace cpheat
