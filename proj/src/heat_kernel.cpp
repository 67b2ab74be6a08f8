#include "cpheat/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpheat/special_functions.hpp"
#include "cpheat/summation.hpp"

namespace cpheat {

namespace {

constexpr int kMaxTerms = 100000;

double log_term_bound(int n, double t, int N, int k) {
  const double log_ratio =
      std::lgamma(N - 1.0 + n) - std::lgamma(N - 1.0) - std::lgamma(n + 1.0);
  const double log_dim = std::log(2.0 * n + N - 1.0) - std::log(N - 1.0) + 2.0 * log_ratio;
  return std::log(dirichlet_normalizer(N, k)) + log_dim - static_cast<double>(n) * (n + N - 1) * t;
}

void check_kernel_args(double t, int N, int k) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel: t must be > 0");
  if (k < 1 || k > 2) throw std::invalid_argument("heat kernel: k must be 1 or 2");
  if (N < k + 1) throw std::invalid_argument("heat kernel: need N >= k + 1");
}

// Bounds b_0..b_L and suffix sums; the last entry absorbs a geometric
// majorant of everything beyond L.
std::vector<double> tail_sums(double t, int N, int k, double tol) {
  std::vector<double> b;
  double prev = 0.0;
  for (int n = 0;; ++n) {
    if (n > kMaxTerms + 1) {
      throw TruncationError("auto_truncation: t = " + std::to_string(t) +
                            " needs more than 10^5 terms");
    }
    const double bn = std::exp(log_term_bound(n, t, N, k));
    b.push_back(bn);
    if (n > 0 && bn < 0.5 * prev && bn < 1e-6 * tol) {
      // Ratios b_{n+1}/b_n keep shrinking past the peak, so the rest is
      // at most b_n.
      b.back() = 2.0 * bn;
      break;
    }
    if (bn == 0.0 && n > 0) break;
    prev = bn;
  }
  std::vector<double> tail(b.size() + 1, 0.0);
  for (std::size_t i = b.size(); i-- > 0;) tail[i] = tail[i + 1] + b[i];
  return tail;
}

int cdf_nodes(const Truncation& tr, int N) { return (tr.n_max + N) / 2 + 2; }

}  // namespace

double term_bound(int n, double t, int N, int k) {
  check_kernel_args(t, N, k);
  return std::exp(log_term_bound(n, t, N, k));
}

Truncation auto_truncation(double t, int N, double tol, int k) {
  check_kernel_args(t, N, k);
  if (!(tol > 0.0)) throw std::invalid_argument("auto_truncation: tol must be > 0");
  const auto tail = tail_sums(t, N, k, tol);
  // tail[n] bounds the sum over degrees >= n.
  for (std::size_t n_max = 1; n_max + 1 < tail.size(); ++n_max) {
    if (tail[n_max + 1] < tol) {
      return {static_cast<int>(n_max), tol, tail[n_max + 1]};
    }
  }
  return {std::max<int>(1, static_cast<int>(tail.size()) - 2), tol, 0.0};
}

Truncation fixed_truncation(int n_max, double t, int N, int k) {
  check_kernel_args(t, N, k);
  if (n_max < 1) throw std::invalid_argument("fixed_truncation: n_max must be >= 1");
  if (n_max > kMaxTerms) throw TruncationError("fixed_truncation: n_max above 10^5");
  // Sum the exact bounds past n_max until they are negligible.
  CompensatedSum tail;
  double prev = std::exp(log_term_bound(n_max, t, N, k));
  for (int n = n_max + 1; n <= n_max + kMaxTerms; ++n) {
    const double bn = std::exp(log_term_bound(n, t, N, k));
    tail += bn;
    if (bn < 0.5 * prev && bn <= 1e-17 * tail.value()) {
      tail += bn;
      break;
    }
    if (bn == 0.0) break;
    prev = bn;
  }
  return {n_max, tail.value(), tail.value()};
}

void DensityQuery1::validate() const {
  if (N < 2) throw std::invalid_argument("DensityQuery1: N must be >= 2");
  if (!(t > 0.0)) throw std::invalid_argument("DensityQuery1: t must be > 0 (t = 0 is a point mass)");
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("DensityQuery1: c outside [0,1]");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("DensityQuery1: u outside [0,1]");
}

void DensityQuery2::validate() const {
  if (N < 3) throw std::invalid_argument("DensityQuery2: N must be >= 3");
  if (!(t > 0.0)) throw std::invalid_argument("DensityQuery2: t must be > 0 (t = 0 is a point mass)");
  if (!c.in_closed_simplex()) throw std::domain_error("DensityQuery2: c outside the simplex");
  if (!u.in_closed_simplex()) throw std::domain_error("DensityQuery2: u outside the simplex");
}

// ---------------------------------------------------------------- Kernel1D

Kernel1D::Kernel1D(double t, double c, int N, const Truncation& tr)
    : N_(N), tr_(tr), cdf_rule_(gauss_jacobi_rule(cdf_nodes(tr, N), 0.0, 0.0)) {
  DensityQuery1{t, c, 0.0, N}.validate();
  const int top = tr.n_max + 1;
  const auto pc = jacobi_p_all(top, {N - 2.0, 0.0}, 2.0 * c - 1.0);
  coeff_.resize(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    coeff_[n] = std::exp(-static_cast<double>(n) * (n + N - 1) * t) * (2.0 * n + N - 1.0) * pc[n];
  }
}

double Kernel1D::series(double u) const {
  const auto pu = jacobi_p_all(tr_.n_max, {N_ - 2.0, 0.0}, 2.0 * u - 1.0);
  CompensatedSum s;
  for (int n = 0; n <= tr_.n_max; ++n) s += coeff_[n] * pu[n];
  return s.value();
}

double Kernel1D::density(double u) const {
  return series(u) * std::pow(1.0 - u, N_ - 2);
}

double Kernel1D::cdf(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (u == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < cdf_rule_.size(); ++i) {
    s += cdf_rule_.weights[i] * density(u * cdf_rule_.nodes[i]);
  }
  return u * s;
}

double Kernel1D::omitted_term(double u) const {
  const int top = tr_.n_max + 1;
  return std::abs(coeff_[top] * jacobi_p(top, {N_ - 2.0, 0.0}, 2.0 * u - 1.0));
}

// ---------------------------------------------------------------- Kernel2D

Kernel2D::Kernel2D(double t, const SimplexPoint& c, int N, const Truncation& tr) : N_(N), tr_(tr) {
  DensityQuery2{t, c, {0.0, 0.0}, N}.validate();
  const int top = tr.n_max + 1;
  const double s = 1.0 - c.u1;
  const auto hc = jacobi_p_homogeneous_all(top, {N - 3.0, 0.0}, s, 2.0 * c.u2 - s);
  const double x1 = std::clamp(2.0 * c.u1 - 1.0, -1.0, 1.0);
  qc_.resize(static_cast<std::size_t>(top) + 1);
  for (int j = 0; j <= top; ++j) {
    const auto pm = jacobi_p_all(top - j, {N - 2.0 + 2.0 * j, 0.0}, x1);
    qc_[j].resize(pm.size());
    for (int m = 0; m <= top - j; ++m) {
      const int n = m + j;
      qc_[j][m] = std::exp(-static_cast<double>(n) * (n + N - 1) * t) * (2.0 * n + N - 1.0) *
                  (2.0 * j + N - 2.0) * pm[m] * hc[j];
    }
  }
}

double Kernel2D::sum_degree_range(const SimplexPoint& u, int n_lo, int n_hi) const {
  const double s = 1.0 - u.u1;
  const auto hu = jacobi_p_homogeneous_all(n_hi, {N_ - 3.0, 0.0}, s, 2.0 * u.u2 - s);
  const double x1 = std::clamp(2.0 * u.u1 - 1.0, -1.0, 1.0);
  CompensatedSum total;
  for (int j = 0; j <= n_hi; ++j) {
    const auto pm = jacobi_p_all(n_hi - j, {N_ - 2.0 + 2.0 * j, 0.0}, x1);
    double inner = 0.0;
    for (int m = std::max(0, n_lo - j); m <= n_hi - j; ++m) inner += qc_[j][m] * pm[m];
    total += inner * hu[j];
  }
  return total.value();
}

double Kernel2D::series(const SimplexPoint& u) const { return sum_degree_range(u, 0, tr_.n_max); }

double Kernel2D::density(const SimplexPoint& u) const {
  const double w = std::max(0.0, 1.0 - u.u1 - u.u2);
  return series(u) * std::pow(w, N_ - 3);
}

double Kernel2D::omitted_term(const SimplexPoint& u) const {
  return std::abs(sum_degree_range(u, tr_.n_max + 1, tr_.n_max + 1));
}

// ---------------------------------------------------------------- free functions

double density_1d(const DensityQuery1& q, const Truncation& tr, SeriesDiagnostics* diag) {
  q.validate();
  const Kernel1D kernel(q.t, q.c, q.N, tr);
  if (diag != nullptr) {
    diag->omitted_term = kernel.omitted_term(q.u) * std::pow(1.0 - q.u, q.N - 2);
    diag->truncation_warning = diag->omitted_term > tr.achieved_bound;
  }
  return kernel.density(q.u);
}

double density_2d(const DensityQuery2& q, const Truncation& tr, SeriesDiagnostics* diag) {
  q.validate();
  const Kernel2D kernel(q.t, q.c, q.N, tr);
  if (diag != nullptr) {
    const double w = std::max(0.0, 1.0 - q.u.u1 - q.u.u2);
    diag->omitted_term = kernel.omitted_term(q.u) * std::pow(w, q.N - 3);
    diag->truncation_warning = diag->omitted_term > tr.achieved_bound;
  }
  return kernel.density(q.u);
}

IdentityCheck eigen_transform_check(int n, double t, double c, int N, double tol) {
  const Truncation tr = auto_truncation(t, N, tol);
  const Kernel1D kernel(t, c, N, tr);
  const QuadratureRule rule = gauss_jacobi_rule((tr.n_max + n) / 2 + 2, N - 2.0, 0.0);
  const JacobiParams p{N - 2.0, 0.0};
  const double lhs = integrate(rule, [&](double u) {
    return jacobi_p(n, p, 2.0 * u - 1.0) * kernel.series(u);
  });
  const double rhs =
      std::exp(-static_cast<double>(n) * (n + N - 1) * t) * jacobi_p(n, p, 2.0 * c - 1.0);
  return {lhs, rhs};
}

IdentityCheck chapman_kolmogorov_check(double t, double s, double c, double u, int N,
                                       double tol) {
  const Truncation tr_t = auto_truncation(t, N, tol);
  const Truncation tr_s = auto_truncation(s, N, tol);
  const Truncation tr_ts = auto_truncation(t + s, N, tol);
  const Kernel1D from_c(t, c, N, tr_t);
  // f_s(v,u) = g_s(u,v) s_1(u) by symmetry of the bracketed series.
  const Kernel1D from_u(s, u, N, tr_s);
  const QuadratureRule rule = gauss_jacobi_rule((tr_t.n_max + tr_s.n_max) / 2 + 2, N - 2.0, 0.0);
  const double inner = integrate(rule, [&](double v) { return from_c.series(v) * from_u.series(v); });
  const double lhs = inner * std::pow(1.0 - u, N - 2);
  const double rhs = Kernel1D(t + s, c, N, tr_ts).density(u);
  return {lhs, rhs};
}

double normalization_1d(double t, double c, int N, double tol) {
  const Truncation tr = auto_truncation(t, N, tol);
  const Kernel1D kernel(t, c, N, tr);
  const QuadratureRule rule = gauss_jacobi_rule(tr.n_max / 2 + 2, N - 2.0, 0.0);
  return integrate(rule, [&](double u) { return kernel.series(u); });
}

double normalization_2d(double t, const SimplexPoint& c, int N, double tol) {
  const Truncation tr = auto_truncation(t, N, tol, 2);
  const Kernel2D kernel(t, c, N, tr);
  const SimplexRule2 rule = simplex_rule_2(tr.n_max / 2 + 2, N);
  return integrate(rule, [&](double u1, double u2) { return kernel.series({u1, u2}); });
}

double marginal_2d(double t, const SimplexPoint& c, double u1, int N, double tol) {
  if (!(u1 >= 0.0 && u1 <= 1.0)) throw std::domain_error("marginal_2d: u1 outside [0,1]");
  const Truncation tr = auto_truncation(t, N, tol, 2);
  const Kernel2D kernel(t, c, N, tr);
  const QuadratureRule rule = gauss_jacobi_rule(tr.n_max / 2 + 2, N - 3.0, 0.0);
  const double s = 1.0 - u1;
  // u2 = s y, du2 = s dy, s_2 = s^{N-3} (1-y)^{N-3}.
  const double inner = integrate(rule, [&](double y) { return kernel.series({u1, s * y}); });
  return inner * std::pow(s, N - 2);
}

double laplace_by_quadrature(double c, double lambda, double t, int N, double tol) {
  const Truncation tr = auto_truncation(t, N, tol);
  const Kernel1D kernel(t, c, N, tr);
  const QuadratureRule rule = gauss_jacobi_rule(tr.n_max / 2 + 32, N - 2.0, 0.0);
  return integrate(rule, [&](double u) { return std::exp(lambda * u) * kernel.series(u); });
}

}  // namespace cpheat
