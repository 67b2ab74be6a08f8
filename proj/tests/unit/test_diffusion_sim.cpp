#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "cpheat/diffusion_sim.hpp"

using namespace cpheat;

TEST_CASE("drift-only run follows the ODE solution") {
  for (int N : {3, 5}) {
    SdeConfig cfg;
    cfg.N = N;
    cfg.k = 2;
    cfg.t_final = 0.7;
    cfg.dt = 1e-4;
    cfg.paths = 1;
    cfg.noise_enabled = false;
    const std::array<double, 2> start{0.6, 0.05};
    const PathEnsemble ens = simulate(cfg, start);
    for (int i = 0; i < 2; ++i) {
      const double exact = 1.0 / N + (start[i] - 1.0 / N) * std::exp(-N * cfg.t_final);
      CHECK(ens.point(0)[i] == doctest::Approx(exact).epsilon(1e-3));
    }
  }
}

TEST_CASE("bitwise determinism across runs and thread counts") {
  SdeConfig cfg;
  cfg.N = 4;
  cfg.k = 2;
  cfg.t_final = 0.1;
  cfg.dt = 1e-3;
  cfg.paths = 500;
  cfg.seed = 42;
  const std::array<double, 2> start{0.3, 0.3};
  const PathEnsemble a = simulate(cfg, start);
  const PathEnsemble b = simulate(cfg, start);
  cfg.threads = 3;
  const PathEnsemble c = simulate(cfg, start);
  CHECK(a.points == b.points);
  CHECK(a.points == c.points);
  cfg.seed = 43;
  CHECK(simulate(cfg, start).points != a.points);
}

TEST_CASE("paths stay in the closed simplex") {
  SdeConfig cfg;
  cfg.N = 3;
  cfg.k = 2;
  cfg.t_final = 0.5;
  cfg.dt = 1e-2;
  cfg.paths = 2000;
  const std::array<double, 2> start{0.0, 1.0};
  const PathEnsemble ens = simulate(cfg, start);
  for (long i = 0; i < ens.size(); ++i) {
    const auto p = ens.point(i);
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[0] + p[1] <= 1.0 + 1e-15);
  }
}

TEST_CASE("euler_step clamps and rescales") {
  std::array<double, 2> u{0.5, 0.5};
  const std::array<double, 2> z{10.0, 0.0};
  euler_step(u, z, 3, 0.1, true);
  CHECK(u[0] >= 0.0);
  CHECK(u[1] >= 0.0);
  CHECK(u[0] + u[1] <= 1.0 + 1e-15);
  std::array<double, 1> v{0.0};
  const std::array<double, 1> zz{-5.0};
  euler_step(v, zz, 3, 0.01, true);
  CHECK(v[0] == doctest::Approx(0.01));  // no noise at the vertex, drift only
}

TEST_CASE("ensemble mean decays at rate N") {
  SdeConfig cfg;
  cfg.N = 4;
  cfg.k = 1;
  cfg.t_final = 0.3;
  cfg.dt = 1e-3;
  cfg.paths = 20000;
  const std::array<double, 1> start{0.8};
  const PathEnsemble ens = simulate(cfg, start);
  const auto [mean, se] = ens.mean_stderr(SimplexPolynomial::variable(1, 0));
  const double exact = 0.25 + 0.55 * std::exp(-4.0 * 0.3);
  CHECK(std::abs(mean - exact) < 4.0 * se + 1e-3);
}

TEST_CASE("generator moment checks") {
  SdeConfig cfg;
  cfg.N = 4;
  cfg.k = 2;
  cfg.dt = 1e-3;
  cfg.paths = 10000;
  cfg.seed = 5;
  const std::array<double, 2> start{0.5, 0.2};
  const auto u1 = SimplexPolynomial::variable(2, 0);
  const auto u2 = SimplexPolynomial::variable(2, 1);

  const MomentCheck one = generator_moment_check(cfg, start, SimplexPolynomial::constant(2, 1.0), 0.2, 0.02);
  CHECK(one.lhs == 0.0);
  CHECK(one.rhs == 0.0);
  CHECK(one.pass());
  for (const auto& g : {u1, u1 * u2, u1 * u1 + u2}) {
    const MomentCheck m = generator_moment_check(cfg, start, g, 0.2, 0.02);
    CHECK(m.pass());
  }
  CHECK_THROWS(generator_moment_check(cfg, start, u1, 0.2, 1e-4));
  CHECK_THROWS(generator_moment_check(cfg, start, u1.pow(5), 0.2, 0.02));
}

TEST_CASE("stationary sampler moments") {
  const int N = 5;
  const PathEnsemble ens = sample_stationary(N, 2, 50000, 9);
  // Dirichlet(1, 1, N-2): E u1 = 1/N, E u1 u2 = 1/(N(N+1)).
  const auto [m1, s1] = ens.mean_stderr(SimplexPolynomial::variable(2, 0));
  CHECK(std::abs(m1 - 1.0 / N) < 4.0 * s1);
  const auto [m2, s2] =
      ens.mean_stderr(SimplexPolynomial::variable(2, 0) * SimplexPolynomial::variable(2, 1));
  CHECK(std::abs(m2 - 1.0 / (N * (N + 1.0))) < 4.0 * s2);
  CHECK(sample_stationary(N, 2, 10, 9).points == sample_stationary(N, 2, 10, 9).points);
}

TEST_CASE("configuration errors") {
  SdeConfig cfg;
  cfg.N = 3;
  cfg.k = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k = 1;
  cfg.dt = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dt = 1e-3;
  cfg.paths = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.paths = 10;
  const std::array<double, 2> wrong{0.1, 0.1};
  CHECK_THROWS_AS(simulate(cfg, wrong), std::invalid_argument);
  const std::array<double, 1> outside{1.5};
  CHECK_THROWS_AS(simulate(cfg, outside), std::domain_error);
}

TEST_CASE("ensemble CSV") {
  SdeConfig cfg;
  cfg.N = 3;
  cfg.k = 2;
  cfg.t_final = 0.1;
  cfg.dt = 1e-2;
  cfg.paths = 3;
  const std::array<double, 2> start{0.2, 0.2};
  std::ostringstream out;
  write_ensemble_csv(simulate(cfg, start), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "u1,u2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
