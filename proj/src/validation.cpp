#include "cpheat/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpheat/coefficients_laplace.hpp"
#include "cpheat/diffusion_sim.hpp"
#include "cpheat/goodness_of_fit.hpp"
#include "cpheat/heat_kernel.hpp"
#include "cpheat/orthopoly_simplex.hpp"
#include "cpheat/pde_operators.hpp"
#include "cpheat/random.hpp"
#include "cpheat/special_functions.hpp"

namespace cpheat {

using nlohmann::json;

namespace {

constexpr double kSeriesTol = 1e-13;

CheckResult at_most(std::string name, json params, double measured, double tolerance) {
  // A NaN measurement fails.
  return {std::move(name), std::move(params), measured, tolerance, measured <= tolerance};
}

CheckResult holds(std::string name, json params, bool ok) {
  return {std::move(name), std::move(params), ok ? 0.0 : 1.0, 0.0, ok};
}

// Relative coefficient-wise gap between two polynomials.
double poly_gap(const SimplexPolynomial& a, const SimplexPolynomial& b) {
  return (a - b).max_abs_coeff() / std::max(1.0, b.max_abs_coeff());
}

double poly_gap(const Polynomial1D& a, const Polynomial1D& b) {
  return (a - b).max_abs_coeff() / std::max(1.0, b.max_abs_coeff());
}

std::vector<SimplexPolynomial::Exponent> exponents_up_to(int k, int d) {
  std::vector<SimplexPolynomial::Exponent> out;
  for (int m = 0; m <= d; ++m) {
    for (auto& e : exponents_of_degree(k, m)) out.push_back(std::move(e));
  }
  return out;
}

SimplexPolynomial random_polynomial(int k, int degree, RandomStream& rng) {
  SimplexPolynomial p(k);
  for (const auto& e : exponents_up_to(k, degree)) p.add_term(e, 2.0 * rng.uniform() - 1.0);
  return p;
}

const std::array<double, 5> kCGrid{0.0, 0.25, 0.5, 0.75, 1.0};
const std::array<double, 3> kTGrid{0.05, 0.2, 1.0};

}  // namespace

bool CriterionReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* CriterionReport::worst() const {
  auto ratio = [](const CheckResult& c) {
    if (c.tolerance > 0.0) return std::isnan(c.measured) ? HUGE_VAL : c.measured / c.tolerance;
    return c.pass ? 0.0 : HUGE_VAL;
  };
  const CheckResult* best = nullptr;
  for (const auto& c : checks) {
    if (best == nullptr || (!c.pass && best->pass) ||
        (c.pass == best->pass && ratio(c) > ratio(*best))) {
      best = &c;
    }
  }
  return best;
}

MonteCarloPlan monte_carlo_plan(Tier tier) {
  return tier == Tier::full ? MonteCarloPlan{200000, 1e-4} : MonteCarloPlan{10000, 1e-3};
}

// ---------------------------------------------------------------- 1

CriterionReport validate_coefficients() {
  CriterionReport r{1, "coefficient theorem", {}};
  for (int N : {2, 3, 5, 8}) {
    for (double c : kCGrid) {
      const CoefficientTable table = solve_coefficients(c, N, 40);
      double err25 = 0.0;
      double err40 = 0.0;
      for (int n = 0; n <= 40; ++n) {
        const double scale =
            jacobi_p_at_one(n, {N - 2.0, 0.0}) / pochhammer(N + n - 1.0, n);
        const double e = std::abs(table.a[n] - closed_form_coefficient(c, N, n)) / scale;
        if (n <= 25) err25 = std::max(err25, e);
        err40 = std::max(err40, e);
      }
      const json p{{"N", N}, {"c", c}};
      r.checks.push_back(at_most("solve_vs_closed_form_n25", p, err25, 1e-9));
      r.checks.push_back(at_most("solve_vs_closed_form_n40", p, err40, 1e-6));
      if (c == 0.0 || c == 1.0) {
        double err = 0.0;
        for (int n = 0; n <= 25; ++n) {
          const double exact = c == 0.0 ? coefficient_at_zero(N, n) : coefficient_at_one(N, n);
          err = std::max({err, std::abs(table.a[n] - exact) / std::abs(exact),
                          std::abs(closed_form_coefficient(c, N, n) - exact) / std::abs(exact)});
        }
        r.checks.push_back(at_most(c == 0.0 ? "endpoint_c0" : "endpoint_c1", p, err, 1e-12));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- 2

CriterionReport validate_neumann() {
  CriterionReport r{2, "Neumann identity", {}};
  for (int N : {2, 4}) {
    for (double c : {0.0, 0.3, 1.0}) {
      for (double x : {0.5, 1.0, 2.0}) {
        r.checks.push_back(at_most("neumann_residual", {{"N", N}, {"c", c}, {"x", x}},
                                   neumann_identity_residual(c, N, x, 25), 1e-12));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- 3

CriterionReport validate_density_1d() {
  CriterionReport r{3, "1D density", {}};
  for (int N : {2, 3, 5, 10}) {
    for (double t : kTGrid) {
      const Truncation tr = auto_truncation(t, N, kSeriesTol);
      double norm_err = 0.0;
      double eigen_err = 0.0;
      double ck_err = 0.0;
      double sym_err = 0.0;
      for (double c : kCGrid) {
        norm_err = std::max(norm_err, std::abs(normalization_1d(t, c, N, kSeriesTol) - 1.0));
        for (int n = 0; n <= 6; ++n) {
          eigen_err = std::max(eigen_err, eigen_transform_check(n, t, c, N, kSeriesTol).abs_diff());
        }
        const Kernel1D from_c(t, c, N, tr);
        for (double u : kCGrid) {
          ck_err = std::max(ck_err,
                            chapman_kolmogorov_check(t, t, c, u, N, kSeriesTol).abs_diff());
          const Kernel1D from_u(t, u, N, tr);
          const double a = from_c.density(u) * std::pow(1.0 - c, N - 2);
          const double b = from_u.density(c) * std::pow(1.0 - u, N - 2);
          const double scale = std::max(std::abs(a), std::abs(b));
          if (scale > 0.0) sym_err = std::max(sym_err, std::abs(a - b) / scale);
        }
      }
      const json p{{"N", N}, {"t", t}};
      r.checks.push_back(at_most("normalization", p, norm_err, 1e-10));
      r.checks.push_back(at_most("eigen_transform_n_le_6", p, eigen_err, 1e-9));
      r.checks.push_back(at_most("chapman_kolmogorov", p, ck_err, 1e-8));
      r.checks.push_back(at_most("symmetry_with_weight_relative", p, sym_err, 1e-11));
    }
  }
  return r;
}

// ---------------------------------------------------------------- 4

CriterionReport validate_density_2d() {
  CriterionReport r{4, "2D density", {}};
  const std::array<SimplexPoint, 5> c_points{
      SimplexPoint{0.0, 0.0}, SimplexPoint{1.0 / 3.0, 1.0 / 3.0}, SimplexPoint{0.5, 0.25},
      SimplexPoint{0.1, 0.8}, SimplexPoint{1.0, 0.0}};
  const std::array<double, 4> u1_grid{0.1, 0.3, 0.6, 0.9};
  for (int N : {3, 4, 6}) {
    for (double t : kTGrid) {
      const Truncation tr1 = auto_truncation(t, N, kSeriesTol);
      double norm_err = 0.0;
      double marg_err = 0.0;
      for (const auto& c : c_points) {
        norm_err = std::max(norm_err, std::abs(normalization_2d(t, c, N, kSeriesTol) - 1.0));
        const Kernel1D k1(t, c.u1, N, tr1);
        for (double u1 : u1_grid) {
          const IdentityCheck m{marginal_2d(t, c, u1, N, kSeriesTol), k1.density(u1)};
          marg_err = std::max(marg_err, m.abs_diff());
        }
      }
      double indep_err = 0.0;
      for (double c1 : {0.2, 0.5}) {
        for (double u1 : u1_grid) {
          const double ref = marginal_2d(t, {c1, 0.0}, u1, N, kSeriesTol);
          for (double c2 : {0.5 * (1.0 - c1), 1.0 - c1}) {
            const IdentityCheck m{marginal_2d(t, {c1, c2}, u1, N, kSeriesTol), ref};
            indep_err = std::max(indep_err, m.abs_diff());
          }
        }
      }
      const json p{{"N", N}, {"t", t}};
      r.checks.push_back(at_most("normalization", p, norm_err, 1e-10));
      r.checks.push_back(at_most("marginal_equals_1d", p, marg_err, 1e-8));
      r.checks.push_back(at_most("marginal_independent_of_c2", p, indep_err, 1e-8));
    }
  }
  return r;
}

// ---------------------------------------------------------------- 5

CriterionReport validate_operators() {
  CriterionReport r{5, "operator suite", {}};

  // Annihilation of the Dirichlet weight.
  for (int N : {3, 4, 5}) {
    const Polynomial1D s1 = Polynomial1D::one_minus_u_pow(N - 2);
    r.checks.push_back(at_most("annihilation_1d", {{"k", 1}, {"N", N}},
                               script_l_1d(s1, N).max_abs_coeff(), 1e-13));
  }
  for (auto [k, N] : std::array<std::pair<int, int>, 4>{{{1, 3}, {2, 4}, {2, 5}, {3, 6}}}) {
    r.checks.push_back(at_most("annihilation", {{"k", k}, {"N", N}},
                               script_l_k(SimplexPolynomial::dirichlet_weight(k, N), N)
                                   .max_abs_coeff(),
                               1e-13));
  }

  // Conjugation through the weight, and the reduction at k = N-1.
  for (int N : {2, 3, 5}) {
    const Polynomial1D s1 = Polynomial1D::one_minus_u_pow(N - 2);
    double gap = 0.0;
    double gap_n2 = 0.0;
    for (int d = 0; d <= 6; ++d) {
      const Polynomial1D g = Polynomial1D::monomial(d);
      gap = std::max(gap, poly_gap(script_l_1d(g * s1, N), s1 * jacobi_op_1d(g, N)));
      if (N == 2) gap_n2 = std::max(gap_n2, poly_gap(script_l_1d(g, N), jacobi_op_1d(g, N)));
    }
    r.checks.push_back(at_most("conjugation_1d", {{"N", N}}, gap, 1e-12));
    if (N == 2) r.checks.push_back(at_most("reduction_1d_N2", {{"N", N}}, gap_n2, 1e-12));
  }
  for (int k = 1; k <= 3; ++k) {
    for (int N = k + 1; N <= k + 3; ++N) {
      const SimplexPolynomial sk = SimplexPolynomial::dirichlet_weight(k, N);
      double gap = 0.0;
      double reduction = 0.0;
      for (const auto& e : exponents_up_to(k, 4)) {
        const SimplexPolynomial g = SimplexPolynomial::monomial(e);
        gap = std::max(gap, poly_gap(script_l_k(g * sk, N), sk * generalized_jacobi_op(g, N)));
        if (N == k + 1) {
          reduction = std::max(reduction, poly_gap(script_l_k(g, N), generalized_jacobi_op(g, N)));
        }
      }
      r.checks.push_back(at_most("conjugation", {{"k", k}, {"N", N}}, gap, 1e-12));
      if (N == k + 1) {
        r.checks.push_back(at_most("reduction_at_k_eq_N_minus_1", {{"k", k}, {"N", N}},
                                   reduction, 1e-12));
      }
    }
  }

  // Eigen-polynomials.
  for (int N : {2, 3, 5}) {
    double gap = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const Polynomial1D P = Polynomial1D::jacobi_shifted(n, {N - 2.0, 0.0});
      const double lambda = eigenvalue(n, {N, 1});
      gap = std::max(gap, poly_gap(jacobi_op_1d(P, N), -lambda * P));
    }
    r.checks.push_back(at_most("jacobi_eigen_1d_n_le_10", {{"N", N}}, gap, 1e-11));
  }
  for (int N : {3, 4, 6}) {
    double gap = 0.0;
    for (int n = 0; n <= 6; ++n) {
      const double lambda = eigenvalue(n, {N, 2});
      for (int j = 0; j <= n; ++j) {
        const SimplexPolynomial Q = simplex_q_polynomial({n, j}, N);
        gap = std::max(gap, poly_gap(generalized_jacobi_op(Q, N), -lambda * Q));
      }
    }
    r.checks.push_back(at_most("simplex_q_eigen_n_le_6", {{"N", N}}, gap, 1e-11));
  }

  // Degree-graded spectrum.
  for (int k : {1, 2}) {
    for (int N : {3, 4, 6}) {
      const OperatorSpectrum spec = operator_spectrum(k, N, 6);
      double defect = spec.max_raising_coeff;
      bool multiplicities = true;
      for (const auto& b : spec.blocks) {
        const double expected = -static_cast<double>(b.degree) * (b.degree + N - 1);
        defect = std::max(defect, b.max_off_diagonal);
        for (double v : b.diagonal) defect = std::max(defect, std::abs(v - expected));
        // Number of simplex indices of total degree n: C(n+k-1, k-1).
        const int count = k == 1 ? 1 : b.degree + 1;
        multiplicities = multiplicities && static_cast<int>(b.diagonal.size()) == count;
      }
      const json p{{"k", k}, {"N", N}, {"max_degree", 6}};
      r.checks.push_back(at_most("spectrum_eigenvalues", p, defect, 1e-9));
      r.checks.push_back(holds("spectrum_multiplicities", p, multiplicities));
    }
  }

  // Linearity.
  RandomStream rng(7, 0);
  for (int k : {1, 2, 3}) {
    const int N = k + 2;
    const SimplexPolynomial p = random_polynomial(k, 3, rng);
    const SimplexPolynomial q = random_polynomial(k, 3, rng);
    const double a = 2.0 * rng.uniform() - 1.0;
    const double b = 2.0 * rng.uniform() - 1.0;
    const double gap = std::max(
        poly_gap(generalized_jacobi_op(a * p + b * q, N),
                 a * generalized_jacobi_op(p, N) + b * generalized_jacobi_op(q, N)),
        poly_gap(script_l_k(a * p + b * q, N), a * script_l_k(p, N) + b * script_l_k(q, N)));
    r.checks.push_back(at_most("linearity", {{"k", k}, {"N", N}}, gap, 1e-13));
  }
  return r;
}

// ---------------------------------------------------------------- 6

CriterionReport validate_heat_residual() {
  CriterionReport r{6, "heat residual", {}};
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
  const double c = 0.5;
  const double dt = 1e-4;
  for (int N : {3, 5}) {
    for (double t : {0.2, 0.5}) {
      const Truncation tr = auto_truncation(t - dt, N, kSeriesTol);
      r.checks.push_back(at_most("fd_residual", {{"N", N}, {"t", t}, {"c", c}, {"dt", dt}},
                                 heat_residual_1d(t, c, N, tr, grid, dt), 1e-6));
    }
  }
  return r;
}

// ---------------------------------------------------------------- 7

CriterionReport validate_boundary_terms(std::uint64_t seed) {
  CriterionReport r{7, "boundary-term dichotomy", {}};
  RandomStream rng(seed, 7);
  for (auto [k, N] : std::array<std::pair<int, int>, 4>{{{2, 4}, {2, 5}, {3, 5}, {3, 6}}}) {
    const SimplexPolynomial sk = SimplexPolynomial::dirichlet_weight(k, N);
    bool all = face_derivative_identity(sk);
    for (int i = 0; i < 10; ++i) {
      all = face_derivative_identity(random_polynomial(k, 3, rng) * sk) && all;
    }
    r.checks.push_back(holds("identity_holds_for_g_times_s_k", {{"k", k}, {"N", N}}, all));
  }
  // At k = N-1 the weight is constant and the identity fails.
  r.checks.push_back(holds("identity_fails_at_k_eq_N_minus_1", {{"k", 2}, {"N", 3}, {"f", "u1"}},
                           !face_derivative_identity(SimplexPolynomial::variable(2, 0))));
  r.checks.push_back(
      holds("identity_fails_at_k_eq_N_minus_1", {{"k", 3}, {"N", 4}, {"f", "u1*u2"}},
            !face_derivative_identity(SimplexPolynomial::monomial({1, 1, 0}))));
  return r;
}

// ---------------------------------------------------------------- 8

CriterionReport validate_laplace() {
  CriterionReport r{8, "Laplace transform", {}};
  for (int N : {3, 5}) {
    for (double t : {0.2, 0.5}) {
      const Truncation tr = auto_truncation(t, N, kSeriesTol);
      double gap = 0.0;
      for (double c : {0.1, 0.4, 0.9}) {
        for (double lambda : {-2.0, 0.0, 2.0, 5.0}) {
          gap = std::max(gap, std::abs(laplace_series(c, lambda, t, N, tr) -
                                       laplace_by_quadrature(c, lambda, t, N, kSeriesTol)));
        }
      }
      r.checks.push_back(at_most("series_vs_quadrature", {{"N", N}, {"t", t}}, gap, 1e-8));
    }
  }
  for (int N : {3, 4}) {
    double gap = 0.0;
    for (double c : {0.2, 0.7}) {
      for (double lambda : {-2.0, 1.5, 5.0}) {
        for (int n = 0; n <= 10; ++n) {
          gap = std::max(gap, inversion_term_identity(n, c, N, lambda).abs_diff());
        }
      }
    }
    r.checks.push_back(at_most("inversion_term_identity_n_le_10", {{"N", N}}, gap, 1e-10));
  }
  return r;
}

// ---------------------------------------------------------------- 9

CriterionReport validate_monte_carlo(const ValidationOptions& opts) {
  CriterionReport r{9, "Monte Carlo cross-validation", {}};
  const MonteCarloPlan plan = monte_carlo_plan(opts.tier);
  auto config = [&](int N, int k, double t, std::uint64_t offset) {
    SdeConfig cfg;
    cfg.N = N;
    cfg.k = k;
    cfg.t_final = t;
    cfg.dt = plan.dt;
    cfg.paths = plan.paths;
    cfg.seed = opts.seed + offset;
    cfg.threads = opts.threads;
    return cfg;
  };
  auto mc_params = [&](json p, const SdeConfig& cfg) {
    p["paths"] = cfg.paths;
    p["dt"] = cfg.dt;
    p["seed"] = cfg.seed;
    return p;
  };

  {
    // Decay of E[u1] - 1/N, log-linear least squares over the snapshots.
    const SdeConfig cfg = config(3, 1, 0.8, 0);
    const std::array<double, 1> start{0.9};
    const std::array<double, 3> times{0.2, 0.4, 0.8};
    const auto snaps = simulate_snapshots(cfg, start, times);
    std::array<double, 3> y{};
    for (int i = 0; i < 3; ++i) {
      y[i] = std::log(snaps[i].mean_stderr(SimplexPolynomial::variable(1, 0)).first - 1.0 / cfg.N);
    }
    const double tbar = (times[0] + times[1] + times[2]) / 3.0;
    const double ybar = (y[0] + y[1] + y[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
      sxy += (times[i] - tbar) * (y[i] - ybar);
      sxx += (times[i] - tbar) * (times[i] - tbar);
    }
    const double rate = -sxy / sxx;
    r.checks.push_back(at_most("mean_decay_rate_relative_error",
                               mc_params({{"N", 3}, {"k", 1}, {"c", 0.9}, {"times", times},
                                          {"rate", rate}},
                                         cfg),
                               std::abs(rate - cfg.N) / cfg.N, 0.05));
  }
  {
    const double t = 0.5;
    const double c = 0.3;
    const SdeConfig cfg = config(3, 1, t, 1);
    const std::array<double, 1> start{c};
    const PathEnsemble ens = simulate(cfg, start);
    const Kernel1D kernel(t, c, 3, auto_truncation(t, 3, kSeriesTol));
    const GofResult g = density_ks_check(ens, kernel);
    r.checks.push_back(at_most("ks_statistic_k1",
                               mc_params({{"N", 3}, {"k", 1}, {"c", c}, {"t", t}}, cfg),
                               g.statistic, g.threshold));
  }
  {
    const double t = 0.4;
    const SimplexPoint c{0.3, 0.2};
    const int bins = opts.tier == Tier::full ? 10 : 5;
    const SdeConfig cfg = config(4, 2, t, 2);
    const std::array<double, 2> start{c.u1, c.u2};
    const PathEnsemble ens = simulate(cfg, start);
    const Kernel2D kernel(t, c, 4, auto_truncation(t, 4, kSeriesTol, 2));
    const json p = mc_params({{"N", 4}, {"k", 2}, {"c", {c.u1, c.u2}}, {"t", t}, {"bins", bins}},
                             cfg);
    try {
      const GofResult g = density_chi_square_check(ens, kernel, bins);
      r.checks.push_back(at_most("chi_square_k2", p, g.statistic, g.threshold));
    } catch (const InsufficientSamplesError&) {
      r.checks.push_back(holds("chi_square_k2_enough_samples", p, false));
    }
  }
  {
    const int N = 6;
    const int k = 3;
    const double t = 1.5;
    const SdeConfig cfg = config(N, k, t, 3);
    const std::array<double, 3> start{0.2, 0.15, 0.1};
    const PathEnsemble ens = simulate(cfg, start);
    const double m1 = 1.0 / N;
    const double m2 = 2.0 / (N * (N + 1.0));
    for (int i = 0; i < k; ++i) {
      const SimplexPolynomial ui = SimplexPolynomial::variable(k, i);
      const auto [mean1, se1] = ens.mean_stderr(ui);
      const auto [mean2, se2] = ens.mean_stderr(ui * ui);
      const json p = mc_params({{"N", N}, {"k", k}, {"t", t}, {"coordinate", i + 1}}, cfg);
      r.checks.push_back(at_most("stationary_first_moment", p, std::abs(mean1 - m1), 3.0 * se1));
      r.checks.push_back(at_most("stationary_second_moment", p, std::abs(mean2 - m2), 3.0 * se2));
    }
  }
  return r;
}

std::vector<CriterionReport> run_validation(const ValidationOptions& opts) {
  return {validate_coefficients(),   validate_neumann(),        validate_density_1d(),
          validate_density_2d(),     validate_operators(),      validate_heat_residual(),
          validate_boundary_terms(opts.seed), validate_laplace(), validate_monte_carlo(opts)};
}

json report_to_json(const ValidationOptions& opts, const std::vector<CriterionReport>& reports) {
  json out;
  out["version"] = CPHEAT_VERSION;
  out["tier"] = tier_name(opts.tier);
  out["seed"] = opts.seed;
  bool all = true;
  json criteria = json::array();
  for (const auto& rep : reports) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"check_name", c.check_name},
                        {"params", c.params},
                        {"measured", c.measured},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    criteria.push_back({{"id", rep.id}, {"name", rep.name}, {"pass", rep.pass()}, {"checks", checks}});
    all = all && rep.pass();
  }
  out["criteria"] = criteria;
  out["pass"] = all;
  return out;
}

std::string tier_name(Tier tier) { return tier == Tier::full ? "full" : "quick"; }

Tier parse_tier(const std::string& name) {
  if (name == "quick") return Tier::quick;
  if (name == "full") return Tier::full;
  throw std::invalid_argument("unknown tier '" + name + "' (expected quick or full)");
}

}  // namespace cpheat
