#include "cpheat/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cpheat/summation.hpp"

namespace cpheat {

namespace {

constexpr double kDomainSlack = 1e-12;

struct RecurrenceCoeffs {
  double a1, a2, a3, a4;
};

// P_n = ((a2 + a3 x) P_{n-1} - a4 P_{n-2}) / a1, n >= 2.
RecurrenceCoeffs recurrence(int n, double alpha, double beta) {
  const double nn = n;
  const double ab = alpha + beta;
  const double two_n_ab = 2.0 * nn + ab;
  return {2.0 * nn * (nn + ab) * (two_n_ab - 2.0),
          (two_n_ab - 1.0) * (alpha * alpha - beta * beta),
          (two_n_ab - 2.0) * (two_n_ab - 1.0) * two_n_ab,
          2.0 * (nn + alpha - 1.0) * (nn + beta - 1.0) * two_n_ab};
}

void check_x(double x) {
  if (!(std::abs(x) <= 1.0 + kDomainSlack)) {
    throw std::domain_error("jacobi_p: argument " + std::to_string(x) +
                            " outside [-1,1]");
  }
}

}  // namespace

void JacobiParams::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::invalid_argument("JacobiParams: alpha and beta must exceed -1");
  }
}

void ModelParams::validate() const {
  if (N < 2) throw std::invalid_argument("ModelParams: N must be >= 2");
  if (k < 1 || k > N - 1) {
    throw std::invalid_argument("ModelParams: k must satisfy 1 <= k <= N-1");
  }
}

double pochhammer(double a, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= a + i;
  return r;
}

std::vector<double> jacobi_p_all(int n_max, const JacobiParams& p, double x) {
  p.validate();
  check_x(x);
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = 0.5 * ((p.alpha - p.beta) + (p.alpha + p.beta + 2.0) * x);
  for (int n = 2; n <= n_max; ++n) {
    const auto c = recurrence(n, p.alpha, p.beta);
    out[n] = ((c.a2 + c.a3 * x) * out[n - 1] - c.a4 * out[n - 2]) / c.a1;
  }
  return out;
}

double jacobi_p(int n, const JacobiParams& p, double x) {
  p.validate();
  check_x(x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * ((p.alpha - p.beta) + (p.alpha + p.beta + 2.0) * x);
  for (int m = 2; m <= n; ++m) {
    const auto c = recurrence(m, p.alpha, p.beta);
    const double next = ((c.a2 + c.a3 * x) * cur - c.a4 * prev) / c.a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_p_at_one(int n, const JacobiParams& p) {
  p.validate();
  double r = 1.0;
  for (int i = 1; i <= n; ++i) r *= (p.alpha + i) / i;
  return r;
}

double jacobi_p_normalized(int n, const JacobiParams& p, double x) {
  return jacobi_p(n, p, x) / jacobi_p_at_one(n, p);
}

double jacobi_p_homogeneous(int n, const JacobiParams& p, double s, double w) {
  p.validate();
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * ((p.alpha - p.beta) * s + (p.alpha + p.beta + 2.0) * w);
  for (int m = 2; m <= n; ++m) {
    const auto c = recurrence(m, p.alpha, p.beta);
    const double next = ((c.a2 * s + c.a3 * w) * cur - c.a4 * s * s * prev) / c.a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> jacobi_p_homogeneous_all(int n_max, const JacobiParams& p, double s,
                                             double w) {
  p.validate();
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = 0.5 * ((p.alpha - p.beta) * s + (p.alpha + p.beta + 2.0) * w);
  for (int m = 2; m <= n_max; ++m) {
    const auto c = recurrence(m, p.alpha, p.beta);
    out[m] = ((c.a2 * s + c.a3 * w) * out[m - 1] - c.a4 * s * s * out[m - 2]) / c.a1;
  }
  return out;
}

double jacobi_norm_sq_1d(int n, int N) {
  if (N < 2) throw std::invalid_argument("jacobi_norm_sq_1d: N must be >= 2");
  return 1.0 / (2.0 * n + N - 1.0);
}

double bessel_j(double alpha, double x) {
  if (!(alpha >= 0.0)) throw std::domain_error("bessel_j: order must be >= 0");
  if (!(std::abs(x) <= 30.0)) {
    throw std::overflow_error("bessel_j: |x| > 30 is outside the series regime");
  }
  if (x == 0.0) return alpha == 0.0 ? 1.0 : 0.0;

  double sign = 1.0;
  if (x < 0.0) {
    const double ia = std::round(alpha);
    if (ia != alpha) throw std::domain_error("bessel_j: negative x needs integer order");
    if (static_cast<long long>(ia) % 2 != 0) sign = -1.0;
    x = -x;
  }
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(alpha * std::log(half) - std::lgamma(alpha + 1.0));
  CompensatedSum sum;
  sum += term;
  for (int p = 1; p < 500; ++p) {
    term *= q / (p * (p + alpha));
    sum += term;
    if (p > half && std::abs(term) < 1e-17 * std::abs(sum.value())) break;
  }
  return sign * sum.value();
}

double hyp1f1(double a, double b, double lambda) {
  if (b <= 0.0 && std::round(b) == b) {
    throw std::invalid_argument("hyp1f1: b must not be a nonpositive integer");
  }
  // Kummer's transformation keeps the summed series free of cancellation.
  if (lambda < 0.0) return std::exp(lambda) * hyp1f1(b - a, b, -lambda);

  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  constexpr int kMaxTerms = 10000;
  for (int m = 0; m < kMaxTerms; ++m) {
    term *= (a + m) / (b + m) * lambda / (m + 1.0);
    sum += term;
    if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw std::runtime_error("hyp1f1: series did not converge in 10^4 terms");
}

double eigenvalue(int n, const ModelParams& params) {
  return static_cast<double>(n) * (n + params.N - 1);
}

double harmonic_dimension(int n, int N) {
  if (N < 2) throw std::invalid_argument("harmonic_dimension: N must be >= 2");
  const double ratio = jacobi_p_at_one(n, {static_cast<double>(N - 2), 0.0});
  return (2.0 * n + N - 1.0) / (N - 1.0) * ratio * ratio;
}

double dirichlet_normalizer(int N, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= N - i;
  return r;
}

}  // namespace cpheat
