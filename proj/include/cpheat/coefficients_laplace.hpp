#pragma once

// Coefficients a_n(c, N) of the lower-triangular system
//
//   sum_{n=0}^{p} a_n C(p,n) / (N+2n)_{p-n} = c^p / p!,   a_0 = 1,
//
// their closed form, the Bessel-series identity they satisfy, and the
// Laplace transform of the 1D density.

#include <vector>

#include "cpheat/heat_kernel.hpp"
#include "cpheat/identity_check.hpp"

namespace cpheat {

struct CoefficientTable {
  double c = 0.0;
  int N = 2;
  std::vector<double> a;  // a[0..n_max]
};

/// Forward substitution on the triangular system, carried out in 100-digit
/// floating point and rounded to double at the end.
CoefficientTable solve_coefficients(double c, int N, int n_max);

/// P_n^{N-2,0}(2c-1) / (N+n-1)_n.
double closed_form_coefficient(double c, int N, int n);

/// Same value through P_n^{0,N-2}(1-2c) and the reflection (-1)^n.
double closed_form_coefficient_reflected(double c, int N, int n);

/// (-1)^n / (N+n-1)_n, the value at c = 0.
double coefficient_at_zero(int N, int n);

/// (N-1)_n / (n! (N+n-1)_n), the value at c = 1.
double coefficient_at_one(int N, int n);

/// |sum_{n<=n_max} (a_n/n!) Gamma(N+2n) (-1)^n J_{2n+N-1}(x) - J_0(sqrt(c) x) (x/2)^{N-1}|
/// with closed-form a_n. Requires |x| <= 5.
double neumann_identity_residual(double c, int N, double x, int n_max);

/// Time on the clock where mode n decays at rate n(n+N-1)/N.
double scaled_time_from_canonical(double t, int N);
double canonical_time_from_scaled(double t_scaled, int N);

/// sum_{n<=n_max} a_n e^{-n(n+N-1) t} lambda^n 1F1(n+1; N+2n; lambda): the
/// Laplace transform of f_t(c, .) with t on the canonical clock.
/// Requires |lambda| <= 10.
double laplace_series(double c, double lambda, double t, int N, const Truncation& tr,
                      SeriesDiagnostics* diag = nullptr);

/// Laplace transform of the stationary density (N-1)(1-u)^{N-2}: 1F1(1; N; lambda).
double laplace_stationary(double lambda, int N);

/// lhs = a_n lambda^n 1F1(n+1; N+2n; lambda);
/// rhs = (2n+N-1) P_n^{0,N-2}(1-2c) * integral of e^{lambda u} P_n^{0,N-2}(1-2u) (1-u)^{N-2} du,
/// the integral by Gauss-Jacobi quadrature.
IdentityCheck inversion_term_identity(int n, double c, int N, double lambda);

}  // namespace cpheat
