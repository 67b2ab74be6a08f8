#include "cpheat/goodness_of_fit.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <string>

#include "cpheat/quadrature.hpp"

namespace cpheat {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InsufficientSamplesError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

GofResult density_ks_check(const PathEnsemble& ens, const Kernel1D& kernel) {
  if (ens.config.k != 1) throw std::invalid_argument("density_ks_check: ensemble must have k = 1");
  if (ens.config.N != kernel.N()) throw std::invalid_argument("density_ks_check: N mismatch");
  if (ens.size() < 1000) throw InsufficientSamplesError("density_ks_check: fewer than 1000 paths");
  GofResult r;
  r.statistic = ks_statistic(ens.points, [&](double u) { return kernel.cdf(u); });
  r.threshold = 2.0 * 1.63 / std::sqrt(static_cast<double>(ens.size()));
  return r;
}

std::vector<double> equal_mass_edges(int bins, double exponent) {
  if (bins < 1) throw std::invalid_argument("equal_mass_edges: bins must be >= 1");
  std::vector<double> e(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    const double a = static_cast<double>(i) / bins;
    e[i] = exponent > 0.0 ? 1.0 - std::pow(1.0 - a, 1.0 / exponent) : a;
  }
  e.front() = 0.0;
  e.back() = 1.0;
  return e;
}

std::vector<double> cell_probabilities(const Kernel2D& kernel, int bins) {
  const int N = kernel.N();
  const auto xe = equal_mass_edges(bins, N - 1.0);
  const auto ye = equal_mass_edges(bins, N - 2.0);
  // The integrand is a polynomial of degree <= n_max + N - 2 in each of x, y.
  const int m = (kernel.truncation().n_max + N) / 2 + 2;
  std::vector<double> p(static_cast<std::size_t>(bins) * bins, 0.0);
  for (int i = 0; i < bins; ++i) {
    const QuadratureRule rx = gauss_legendre_rule(m, xe[i], xe[i + 1]);
    for (int j = 0; j < bins; ++j) {
      const QuadratureRule ry = gauss_legendre_rule(m, ye[j], ye[j + 1]);
      double s = 0.0;
      for (std::size_t a = 0; a < rx.size(); ++a) {
        const double x = rx.nodes[a];
        for (std::size_t b = 0; b < ry.size(); ++b) {
          s += rx.weights[a] * ry.weights[b] * (1.0 - x) *
               kernel.density({x, (1.0 - x) * ry.nodes[b]});
        }
      }
      p[i * bins + j] = s;
    }
  }
  return p;
}

GofResult density_chi_square_check(const PathEnsemble& ens, const Kernel2D& kernel, int bins) {
  if (ens.config.k != 2) {
    throw std::invalid_argument("density_chi_square_check: ensemble must have k = 2");
  }
  const int N = kernel.N();
  if (ens.config.N != N) throw std::invalid_argument("density_chi_square_check: N mismatch");
  if (bins < 2) throw std::invalid_argument("density_chi_square_check: bins must be >= 2");
  const double n = static_cast<double>(ens.size());
  const auto prob = cell_probabilities(kernel, bins);
  GofResult r;
  r.min_expected = n * *std::min_element(prob.begin(), prob.end());
  if (r.min_expected < 5.0) {
    throw InsufficientSamplesError("density_chi_square_check: expected cell count " +
                                   std::to_string(r.min_expected) + " below 5");
  }
  std::vector<double> counts(prob.size(), 0.0);
  auto cell = [bins](double mass) {
    return std::clamp(static_cast<int>(std::floor(mass * bins)), 0, bins - 1);
  };
  for (long i = 0; i < ens.size(); ++i) {
    const auto u = ens.point(i);
    const double x = std::clamp(u[0], 0.0, 1.0);
    const double y = x < 1.0 ? std::clamp(u[1] / (1.0 - x), 0.0, 1.0) : 0.0;
    const int a = cell(1.0 - std::pow(1.0 - x, N - 1));
    const int b = cell(1.0 - std::pow(1.0 - y, N - 2));
    counts[a * bins + b] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t c = 0; c < prob.size(); ++c) {
    const double e = n * prob[c];
    chi2 += (counts[c] - e) * (counts[c] - e) / e;
  }
  r.statistic = chi2;
  r.degrees_of_freedom = static_cast<double>(bins) * bins - 1.0;
  r.threshold = boost::math::quantile(boost::math::chi_squared(r.degrees_of_freedom), 0.99);
  return r;
}

}  // namespace cpheat
