#pragma once

// Scalar special functions: rising factorials, Jacobi polynomials, Bessel J,
// Kummer's confluent hypergeometric function, and the spectral data of the
// Laplacian on the complex projective space CP^{N-1}.

#include <stdexcept>
#include <vector>

namespace cpheat {

/// Parameters (alpha, beta) of the Jacobi polynomial P_n^{alpha,beta}.
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws std::invalid_argument unless alpha > -1 and beta > -1.
  void validate() const;
};

/// Ambient complex dimension N and number k of projected coordinates.
struct ModelParams {
  int N = 2;
  int k = 1;

  /// Throws std::invalid_argument unless N >= 2 and 1 <= k <= N-1.
  void validate() const;
};

/// Rising factorial (a)_m = a (a+1) ... (a+m-1); (a)_0 = 1.
double pochhammer(double a, int m);

/// P_n^{alpha,beta}(x) by the forward three-term recurrence.
/// Throws std::domain_error if |x| > 1 + 1e-12.
double jacobi_p(int n, const JacobiParams& p, double x);

/// Values P_0(x), ..., P_{n_max}(x) in one recurrence sweep.
std::vector<double> jacobi_p_all(int n_max, const JacobiParams& p, double x);

/// P_n(x) / P_n(1).
double jacobi_p_normalized(int n, const JacobiParams& p, double x);

/// P_n^{alpha,beta}(1) = (alpha+1)_n / n!.
double jacobi_p_at_one(int n, const JacobiParams& p);

/// Homogenized Jacobi polynomial s^n P_n(w / s), evaluated without dividing
/// by s. Well defined (and polynomial in (s, w)) at s = 0.
double jacobi_p_homogeneous(int n, const JacobiParams& p, double s, double w);

/// s^n P_n(w / s) for n = 0..n_max.
std::vector<double> jacobi_p_homogeneous_all(int n_max, const JacobiParams& p, double s,
                                             double w);

/// Squared norm of u -> P_n^{N-2,0}(2u-1) against (1-u)^{N-2} du on [0,1].
double jacobi_norm_sq_1d(int n, int N);

/// Bessel function of the first kind from its power series. The absolute
/// error grows like 1e-16 e^{|x|}. Requires alpha >= 0; refuses |x| > 30
/// with std::overflow_error.
double bessel_j(double alpha, double x);

/// Kummer's 1F1(a; b; lambda) by its convergent power series.
/// Throws std::invalid_argument when b is a nonpositive integer and
/// std::runtime_error if 10^4 terms do not converge.
double hyp1f1(double a, double b, double lambda);

/// Decay rate n(n+N-1) of the degree-n eigenspace.
double eigenvalue(int n, const ModelParams& params);

/// Dimension d(n,N) of the degree-n eigenspace of the CP^{N-1} Laplacian.
double harmonic_dimension(int n, int N);

/// 1 / integral of s_k over the simplex: (N-1)(N-2)...(N-k).
double dirichlet_normalizer(int N, int k);

}  // namespace cpheat
