#pragma once

// Transition densities of |U_t^1|^2 and (|U_t^1|^2, |U_t^2|^2) for Brownian
// motion on CP^{N-1}, as truncated spectral series.
//
// Time runs on the clock in which the degree-n mode decays at rate n(n+N-1).
// Densities are always with respect to Lebesgue measure, i.e. they include the
// Dirichlet factor s_k(u).

#include <vector>

#include "cpheat/identity_check.hpp"
#include "cpheat/orthopoly_simplex.hpp"
#include "cpheat/quadrature.hpp"

namespace cpheat {

/// Series cutoff together with a certified bound on the omitted tail.
struct Truncation {
  int n_max = 1;
  double tol = 0.0;             // requested absolute tail bound
  double achieved_bound = 0.0;  // certified bound for terms n > n_max
};

/// Raised when a truncation would need more than 10^5 terms.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bound on the degree-n term of the k-dimensional kernel series (k = 1, 2):
/// (N-1)...(N-k) d(n,N) exp(-n(n+N-1) t).
double term_bound(int n, double t, int N, int k = 1);

/// Smallest n_max >= 1 whose certified tail is below tol.
Truncation auto_truncation(double t, int N, double tol, int k = 1);

/// Truncation at a given n_max, with its certified tail bound.
Truncation fixed_truncation(int n_max, double t, int N, int k = 1);

struct DensityQuery1 {
  double t = 1.0;
  double c = 0.0;
  double u = 0.0;
  int N = 2;

  void validate() const;
};

struct DensityQuery2 {
  double t = 1.0;
  SimplexPoint c;
  SimplexPoint u;
  int N = 3;

  void validate() const;
};

/// Optional diagnostics from a density evaluation.
struct SeriesDiagnostics {
  double omitted_term = 0.0;  // |term n_max + 1| at the query point
  bool truncation_warning = false;  // omitted term exceeds achieved_bound
};

/// 1D kernel for fixed (t, c, N), reusable across evaluation points.
class Kernel1D {
 public:
  Kernel1D(double t, double c, int N, const Truncation& tr);

  /// Bracketed series sum_n e^{-n(n+N-1)t} P_n(2c-1) P_n(2u-1) / ||P_n||^2.
  [[nodiscard]] double series(double u) const;
  /// series(u) * (1-u)^{N-2}.
  [[nodiscard]] double density(double u) const;
  /// P(|U_t^1|^2 <= u), integrating the density by Gauss-Legendre.
  [[nodiscard]] double cdf(double u) const;
  /// |term n_max + 1| at u.
  [[nodiscard]] double omitted_term(double u) const;

  [[nodiscard]] int N() const { return N_; }
  [[nodiscard]] const Truncation& truncation() const { return tr_; }

 private:
  int N_;
  Truncation tr_;
  std::vector<double> coeff_;  // e^{-lambda_n t} (2n+N-1) P_n(2c-1), n = 0..n_max+1
  QuadratureRule cdf_rule_;    // Gauss-Legendre on [0,1]
};

/// 2D kernel for fixed (t, c, N).
class Kernel2D {
 public:
  Kernel2D(double t, const SimplexPoint& c, int N, const Truncation& tr);

  [[nodiscard]] double series(const SimplexPoint& u) const;
  /// series(u) * (1-u1-u2)^{N-3}.
  [[nodiscard]] double density(const SimplexPoint& u) const;
  [[nodiscard]] double omitted_term(const SimplexPoint& u) const;

  [[nodiscard]] int N() const { return N_; }
  [[nodiscard]] const Truncation& truncation() const { return tr_; }

 private:
  double sum_degree_range(const SimplexPoint& u, int n_lo, int n_hi) const;

  int N_;
  Truncation tr_;
  // qc_[j][m] = e^{-lambda_n t}(2n+N-1)(2j+N-2) Q_{m,j}(c), n = m + j.
  std::vector<std::vector<double>> qc_;
};

double density_1d(const DensityQuery1& q, const Truncation& tr,
                  SeriesDiagnostics* diag = nullptr);

double density_2d(const DensityQuery2& q, const Truncation& tr,
                  SeriesDiagnostics* diag = nullptr);

/// lhs = integral of P_n^{N-2,0}(2u-1) f_t(c,u) du (Gauss-Jacobi);
/// rhs = e^{-n(n+N-1)t} P_n^{N-2,0}(2c-1).
IdentityCheck eigen_transform_check(int n, double t, double c, int N, double tol = 1e-13);

/// lhs = integral of f_t(c,v) f_s(v,u) dv; rhs = f_{t+s}(c,u).
IdentityCheck chapman_kolmogorov_check(double t, double s, double c, double u, int N,
                                       double tol = 1e-13);

/// Integral of f_t(c,.) over [0,1] by Gauss-Jacobi quadrature.
double normalization_1d(double t, double c, int N, double tol = 1e-13);

/// Integral of f_t^{(2)}(c,.) over the simplex by the conical product rule.
double normalization_2d(double t, const SimplexPoint& c, int N, double tol = 1e-13);

/// Integral of f_t^{(2)}(c,(u1,u2)) over u2 in [0, 1-u1].
double marginal_2d(double t, const SimplexPoint& c, double u1, int N, double tol = 1e-13);

/// Integral of e^{lambda u} f_t(c,u) du by Gauss-Jacobi quadrature.
double laplace_by_quadrature(double c, double lambda, double t, int N, double tol = 1e-13);

}  // namespace cpheat
