#include "cpheat/coefficients_laplace.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

#include "cpheat/quadrature.hpp"
#include "cpheat/special_functions.hpp"
#include "cpheat/summation.hpp"

namespace cpheat {

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

void check_c_N(double c, int N) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("coefficients: c outside [0,1]");
  if (N < 2) throw std::invalid_argument("coefficients: N must be >= 2");
}

void check_lambda(double lambda) {
  if (!(std::abs(lambda) <= 10.0)) throw std::domain_error("laplace: |lambda| must be <= 10");
}

}  // namespace

CoefficientTable solve_coefficients(double c, int N, int n_max) {
  check_c_N(c, N);
  if (n_max < 0) throw std::invalid_argument("solve_coefficients: n_max must be >= 0");
  std::vector<Big> a(static_cast<std::size_t>(n_max) + 1);
  const Big cb(c);
  Big rhs_p = 1;  // c^p / p!
  for (int p = 0; p <= n_max; ++p) {
    if (p > 0) rhs_p = rhs_p * cb / p;
    Big acc = rhs_p;
    Big binom = 1;  // C(p, n)
    for (int n = 0; n < p; ++n) {
      Big poch = 1;
      for (int i = 0; i < p - n; ++i) poch *= N + 2 * n + i;
      acc -= a[n] * binom / poch;
      binom = binom * (p - n) / (n + 1);
    }
    a[p] = acc;
  }
  CoefficientTable table{c, N, {}};
  table.a.reserve(a.size());
  for (const auto& v : a) table.a.push_back(static_cast<double>(v));
  return table;
}

double closed_form_coefficient(double c, int N, int n) {
  check_c_N(c, N);
  return jacobi_p(n, {N - 2.0, 0.0}, 2.0 * c - 1.0) / pochhammer(N + n - 1.0, n);
}

double closed_form_coefficient_reflected(double c, int N, int n) {
  check_c_N(c, N);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * jacobi_p(n, {0.0, N - 2.0}, 1.0 - 2.0 * c) / pochhammer(N + n - 1.0, n);
}

double coefficient_at_zero(int N, int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / pochhammer(N + n - 1.0, n);
}

double coefficient_at_one(int N, int n) {
  return pochhammer(N - 1.0, n) / (std::tgamma(n + 1.0) * pochhammer(N + n - 1.0, n));
}

double neumann_identity_residual(double c, int N, double x, int n_max) {
  check_c_N(c, N);
  if (!(std::abs(x) <= 5.0)) throw std::domain_error("neumann_identity_residual: |x| > 5");
  const double half = 0.5 * x;
  const double q = -half * half;
  CompensatedSum lhs;
  double n_fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) n_fact *= n;
    // Gamma(alpha+1) J_alpha(x) = sum_p (-1)^p (x/2)^{2p+alpha} / (p! (alpha+1)_p).
    const int alpha = 2 * n + N - 1;
    double term = std::pow(half, alpha);
    CompensatedSum scaled_j;
    scaled_j += term;
    for (int p = 1; p < 200; ++p) {
      term *= q / (p * (alpha + p));
      scaled_j += term;
      if (std::abs(term) < 1e-18 * std::abs(scaled_j.value())) break;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    lhs += closed_form_coefficient(c, N, n) / n_fact * sign * scaled_j.value();
  }
  const double rhs = bessel_j(0.0, std::sqrt(c) * x) * std::pow(half, N - 1);
  return std::abs(lhs.value() - rhs);
}

double scaled_time_from_canonical(double t, int N) { return N * t; }

double canonical_time_from_scaled(double t_scaled, int N) { return t_scaled / N; }

double laplace_series(double c, double lambda, double t, int N, const Truncation& tr,
                      SeriesDiagnostics* diag) {
  check_c_N(c, N);
  check_lambda(lambda);
  if (!(t > 0.0)) throw std::invalid_argument("laplace_series: t must be > 0");
  const double t_scaled = scaled_time_from_canonical(t, N);
  auto term = [&](int n) {
    const double rate = static_cast<double>(n) * (n + N - 1) / N;
    return closed_form_coefficient(c, N, n) * std::exp(-rate * t_scaled) * std::pow(lambda, n) *
           hyp1f1(n + 1.0, N + 2.0 * n, lambda);
  };
  CompensatedSum sum;
  for (int n = 0; n <= tr.n_max; ++n) sum += term(n);
  if (diag != nullptr) {
    diag->omitted_term = std::abs(term(tr.n_max + 1));
    // The density tail bound carries over after integrating against e^{lambda u}.
    diag->truncation_warning =
        diag->omitted_term > std::exp(std::max(lambda, 0.0)) * tr.achieved_bound;
  }
  return sum.value();
}

double laplace_stationary(double lambda, int N) {
  check_lambda(lambda);
  return hyp1f1(1.0, N, lambda);
}

IdentityCheck inversion_term_identity(int n, double c, int N, double lambda) {
  check_c_N(c, N);
  check_lambda(lambda);
  if (n < 0 || n > 20) throw std::invalid_argument("inversion_term_identity: need 0 <= n <= 20");
  const double lhs = closed_form_coefficient(c, N, n) * std::pow(lambda, n) *
                     hyp1f1(n + 1.0, N + 2.0 * n, lambda);
  const JacobiParams p{0.0, N - 2.0};
  const QuadratureRule rule = gauss_jacobi_rule(n + 30, N - 2.0, 0.0);
  const double integral = integrate(rule, [&](double u) {
    return std::exp(lambda * u) * jacobi_p(n, p, 1.0 - 2.0 * u);
  });
  const double rhs = (2.0 * n + N - 1.0) * jacobi_p(n, p, 1.0 - 2.0 * c) * integral;
  return {lhs, rhs};
}

}  // namespace cpheat
