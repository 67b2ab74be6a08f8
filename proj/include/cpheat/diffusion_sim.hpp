#pragma once

// Euler-Maruyama simulation of the diffusion on the k-simplex generated by
//
//   sum (1 - N u_i) d_i + sum (u_i - u_i^2) d_ii - sum_{i!=j} u_i u_j d_ij,
//
// i.e. du = (1 - N u) dt + sqrt(2 dt) L z with L L^T = diag(u) - u u^T.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpheat/polynomial.hpp"

namespace cpheat {

struct SdeConfig {
  int N = 3;
  int k = 1;
  double t_final = 1.0;
  double dt = 1e-3;
  long paths = 1000;
  std::uint64_t seed = 1;
  bool noise_enabled = true;  // false integrates the drift ODE only
  int threads = 1;

  /// Throws std::invalid_argument unless 1 <= k <= N-1, t_final > 0,
  /// 0 < dt <= t_final/10, paths >= 1 and threads >= 1.
  void validate() const;
};

/// Raised when a coordinate stops being finite.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  [[nodiscard]] long step() const { return step_; }

 private:
  long step_;
};

/// Positions of all paths at one time, row-major (paths x k).
struct PathEnsemble {
  SdeConfig config;
  double time = 0.0;
  std::vector<double> points;

  [[nodiscard]] long size() const {
    return static_cast<long>(points.size()) / config.k;
  }
  [[nodiscard]] std::span<const double> point(long i) const {
    return {points.data() + i * config.k, static_cast<std::size_t>(config.k)};
  }
  /// Ensemble mean and standard error of g over the paths.
  [[nodiscard]] std::pair<double, double> mean_stderr(const SimplexPolynomial& g) const;
};

/// One step of the scheme for a point u of the closed k-simplex, using k
/// standard normals z. Clamps negative coordinates to 0 and rescales when
/// the coordinates sum past 1.
void euler_step(std::span<double> u, std::span<const double> z, int N, double dt, bool noise);

/// Paths at cfg.t_final started from `start`.
PathEnsemble simulate(const SdeConfig& cfg, std::span<const double> start);

/// Paths at each of the increasing times in (0, cfg.t_final]. A path is a
/// single trajectory through all the snapshot times.
std::vector<PathEnsemble> simulate_snapshots(const SdeConfig& cfg, std::span<const double> start,
                                             std::span<const double> times);

/// Exact draws from the stationary law Dirichlet(1, ..., 1, N-k) of the
/// first k coordinates, from the same counter-based generator.
PathEnsemble sample_stationary(int N, int k, long count, std::uint64_t seed);

/// One row per path, coordinates at 17 significant digits.
void write_ensemble_csv(const PathEnsemble& ens, std::ostream& out);

/// d/dt E g(U_t) against E[(generator g)(U_t)] at time t.
struct MomentCheck {
  double lhs = 0.0;        // (E g(t+h) - E g(t-h)) / 2h
  double rhs = 0.0;        // Simpson average of E[generator g] over [t-h, t+h]
  double std_error = 0.0;  // standard error of the per-path difference
  double allowance = 0.0;  // discretization allowance, proportional to dt
  [[nodiscard]] bool pass() const;
};

/// Requires total degree of g <= 4 and h > dt.
MomentCheck generator_moment_check(const SdeConfig& cfg, std::span<const double> start,
                                   const SimplexPolynomial& g, double t, double h);

}  // namespace cpheat
