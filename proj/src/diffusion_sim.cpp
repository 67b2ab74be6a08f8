#include "cpheat/diffusion_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "cpheat/csv.hpp"
#include "cpheat/pde_operators.hpp"
#include "cpheat/random.hpp"

namespace cpheat {

namespace {

constexpr int kMaxK = 64;

void check_start(const SdeConfig& cfg, std::span<const double> start) {
  if (static_cast<int>(start.size()) != cfg.k) {
    throw std::invalid_argument("simulate: start has " + std::to_string(start.size()) +
                                " coordinates, expected k = " + std::to_string(cfg.k));
  }
  double sum = 0.0;
  for (double x : start) {
    if (!(x >= 0.0)) throw std::domain_error("simulate: start has a negative coordinate");
    sum += x;
  }
  if (!(sum <= 1.0 + 1e-12)) throw std::domain_error("simulate: start coordinates sum past 1");
}

// Runs paths [begin, end) through all snapshot times, writing into out[s].
void run_paths(const SdeConfig& cfg, std::span<const double> start, std::span<const double> times,
               long begin, long end, std::vector<PathEnsemble>& out) {
  const int k = cfg.k;
  std::array<double, kMaxK> u{};
  std::array<double, kMaxK> z{};
  for (long p = begin; p < end; ++p) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(p));
    std::copy(start.begin(), start.end(), u.begin());
    double now = 0.0;
    long step = 0;
    for (std::size_t s = 0; s < times.size(); ++s) {
      const double remaining = times[s] - now;
      const auto full = static_cast<long>(std::floor(remaining / cfg.dt * (1.0 + 1e-12)));
      const double rest = remaining - static_cast<double>(full) * cfg.dt;
      const long total = full + (rest > 1e-12 * cfg.dt ? 1 : 0);
      for (long i = 0; i < total; ++i, ++step) {
        const double h = i < full ? cfg.dt : rest;
        if (cfg.noise_enabled) {
          for (int j = 0; j < k; ++j) z[j] = rng.normal();
        }
        euler_step({u.data(), static_cast<std::size_t>(k)},
                   {z.data(), static_cast<std::size_t>(k)}, cfg.N, h, cfg.noise_enabled);
        for (int j = 0; j < k; ++j) {
          if (!std::isfinite(u[j])) {
            throw SimulationError("simulate: non-finite coordinate on path " +
                                      std::to_string(p) + " at step " + std::to_string(step),
                                  step);
          }
        }
      }
      now = times[s];
      std::copy(u.begin(), u.begin() + k, out[s].points.begin() + p * k);
    }
  }
}

}  // namespace

void SdeConfig::validate() const {
  if (N < 2) throw std::invalid_argument("SdeConfig: N must be >= 2");
  if (k < 1 || k > N - 1) throw std::invalid_argument("SdeConfig: need 1 <= k <= N-1");
  if (k > kMaxK) throw std::invalid_argument("SdeConfig: k above 64");
  if (!(t_final > 0.0)) throw std::invalid_argument("SdeConfig: t_final must be > 0");
  if (!(dt > 0.0) || !(dt <= t_final / 10.0 * (1.0 + 1e-12))) {
    throw std::invalid_argument("SdeConfig: need 0 < dt <= t_final/10");
  }
  if (paths < 1) throw std::invalid_argument("SdeConfig: paths must be >= 1");
  if (threads < 1) throw std::invalid_argument("SdeConfig: threads must be >= 1");
}

std::pair<double, double> PathEnsemble::mean_stderr(const SimplexPolynomial& g) const {
  const long n = size();
  if (n < 2) throw std::invalid_argument("mean_stderr: need at least two paths");
  double mean = 0.0;
  double m2 = 0.0;
  for (long i = 0; i < n; ++i) {
    const double x = g(point(i));
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  return {mean, std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n))};
}

void euler_step(std::span<double> u, std::span<const double> z, int N, double dt, bool noise) {
  const int k = static_cast<int>(u.size());
  std::array<double, kMaxK> xi;
  std::fill_n(xi.begin(), k, 0.0);
  if (noise) {
    // Column m of the factor of diag(u) - u u^T, with R_m = 1 - u_0 - ... - u_{m-1}:
    //   L_mm = sqrt(u_m (R_m - u_m) / R_m),  L_im = -u_i L_mm / (R_m - u_m), i > m.
    double r = 1.0;
    for (int m = 0; m < k; ++m) {
      const double um = u[m];
      const double rest = std::max(r - um, 0.0);
      if (r > 0.0 && rest > 0.0 && um > 0.0) {
        const double lz = std::sqrt(um * rest / r) * z[m];
        xi[m] += lz;
        const double s = lz / rest;
        for (int i = m + 1; i < k; ++i) xi[i] -= u[i] * s;
      }
      r -= um;
    }
  }
  const double scale = std::sqrt(2.0 * dt);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double next = u[i] + (1.0 - N * u[i]) * dt + scale * xi[i];
    u[i] = next > 0.0 ? next : 0.0;
    sum += u[i];
  }
  if (sum > 1.0) {
    for (int i = 0; i < k; ++i) u[i] /= sum;
  }
}

std::vector<PathEnsemble> simulate_snapshots(const SdeConfig& cfg, std::span<const double> start,
                                             std::span<const double> times) {
  cfg.validate();
  check_start(cfg, start);
  if (times.empty()) throw std::invalid_argument("simulate_snapshots: no times");
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double prev = s == 0 ? 0.0 : times[s - 1];
    if (!(times[s] > prev) || times[s] > cfg.t_final * (1.0 + 1e-12)) {
      throw std::invalid_argument("simulate_snapshots: times must increase within (0, t_final]");
    }
  }
  std::vector<PathEnsemble> out(times.size());
  for (std::size_t s = 0; s < times.size(); ++s) {
    out[s].config = cfg;
    out[s].time = times[s];
    out[s].points.assign(static_cast<std::size_t>(cfg.paths) * cfg.k, 0.0);
  }
  const long workers = std::min<long>(cfg.threads, cfg.paths);
  if (workers == 1) {
    run_paths(cfg, start, times, 0, cfg.paths, out);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    const long begin = cfg.paths * w / workers;
    const long end = cfg.paths * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        run_paths(cfg, start, times, begin, end, out);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

PathEnsemble simulate(const SdeConfig& cfg, std::span<const double> start) {
  const double t = cfg.t_final;
  return simulate_snapshots(cfg, start, {&t, 1}).front();
}

PathEnsemble sample_stationary(int N, int k, long count, std::uint64_t seed) {
  if (N < 2 || k < 1 || k > N - 1) throw std::invalid_argument("sample_stationary: need 1 <= k <= N-1");
  if (count < 1) throw std::invalid_argument("sample_stationary: count must be >= 1");
  PathEnsemble ens;
  ens.config.N = N;
  ens.config.k = k;
  ens.config.paths = count;
  ens.config.seed = seed;
  ens.time = std::numeric_limits<double>::infinity();
  ens.points.resize(static_cast<std::size_t>(count) * k);
  for (long p = 0; p < count; ++p) {
    RandomStream rng(seed, static_cast<std::uint64_t>(p));
    // Gamma(1) draws for the first k parts, Gamma(N-k) for the remainder.
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      const double e = -std::log(rng.uniform());
      ens.points[p * k + j] = e;
      total += e;
    }
    for (int j = 0; j < N - k; ++j) total -= std::log(rng.uniform());
    for (int j = 0; j < k; ++j) ens.points[p * k + j] /= total;
  }
  return ens;
}

void write_ensemble_csv(const PathEnsemble& ens, std::ostream& out) {
  const int k = ens.config.k;
  std::vector<std::string> names;
  for (int j = 0; j < k; ++j) names.push_back("u" + std::to_string(j + 1));
  write_csv_columns(out, names);
  for (long i = 0; i < ens.size(); ++i) write_csv_row(out, ens.point(i));
}

bool MomentCheck::pass() const { return std::abs(lhs - rhs) <= 3.0 * std_error + allowance; }

MomentCheck generator_moment_check(const SdeConfig& cfg, std::span<const double> start,
                                   const SimplexPolynomial& g, double t, double h) {
  if (g.k() != cfg.k) throw std::invalid_argument("generator_moment_check: g has the wrong k");
  if (g.total_degree() > 4) {
    throw std::invalid_argument("generator_moment_check: total degree above 4");
  }
  if (!(h > cfg.dt) || !(t - h > 0.0)) {
    throw std::invalid_argument("generator_moment_check: need h > dt and t > h");
  }
  SdeConfig run = cfg;
  run.t_final = t + h;
  const std::array<double, 3> times{t - h, t, t + h};
  const auto snaps = simulate_snapshots(run, start, times);
  const SimplexPolynomial lg = generalized_jacobi_op(g, cfg.N);
  const long n = cfg.paths;
  double mean_l = 0.0, mean_r = 0.0, mean_d = 0.0, m2 = 0.0;
  for (long i = 0; i < n; ++i) {
    const double l = (g(snaps[2].point(i)) - g(snaps[0].point(i))) / (2.0 * h);
    const double r =
        (lg(snaps[0].point(i)) + 4.0 * lg(snaps[1].point(i)) + lg(snaps[2].point(i))) / 6.0;
    const double d = l - r;
    const double w = 1.0 / static_cast<double>(i + 1);
    mean_l += (l - mean_l) * w;
    mean_r += (r - mean_r) * w;
    const double delta = d - mean_d;
    mean_d += delta * w;
    m2 += delta * (d - mean_d);
  }
  MomentCheck out;
  out.lhs = mean_l;
  out.rhs = mean_r;
  out.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  out.allowance =
      (cfg.N + 1.0) * (cfg.N + 1.0) * cfg.dt * std::max(1.0, g.max_abs_coeff());
  return out;
}

}  // namespace cpheat
