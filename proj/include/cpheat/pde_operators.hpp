#pragma once

// Exact application of the Jacobi-type differential operators to
// polynomials, and the checks built on them.
//
//   jacobi_op_1d:          u(1-u) d^2 + (1 - N u) d
//   script_l_1d:           u(1-u) d^2 + (1 + (N-4) u) d + (N-2)
//   generalized_jacobi_op: sum (1 - N u_i) d_i + sum (u_i - u_i^2) d_ii - sum_{i!=j} u_i u_j d_ij
//   script_l_k:            k(N-k-1) + sum (1 + (N-2k-2) u_i) d_i + (same second-order part)
//
// script_l_* is the formal adjoint, so script_l(g s_k) = s_k generalized_jacobi_op(g).

#include <span>
#include <vector>

#include "cpheat/heat_kernel.hpp"
#include "cpheat/polynomial.hpp"

namespace cpheat {

Polynomial1D jacobi_op_1d(const Polynomial1D& g, int N);

Polynomial1D script_l_1d(const Polynomial1D& f, int N);

/// Requires g.k() <= N-1.
SimplexPolynomial generalized_jacobi_op(const SimplexPolynomial& g, int N);

/// Requires f.k() <= N-1.
SimplexPolynomial script_l_k(const SimplexPolynomial& f, int N);

/// Max over u_grid of |central difference in t of g_t(u) - sum_n (-n(n+N-1)) term_n(u)|,
/// where g_t = f_t / s_1 is the truncated series. Requires t > 2 dt.
double heat_residual_1d(double t, double c, int N, const Truncation& tr,
                        std::span<const double> u_grid, double dt = 1e-4);

/// True iff d_i f - d_j f vanishes on {u_1 + ... + u_k = 1} for every pair
/// i < j, i.e. all coefficients after substituting u_1 = 1 - u_2 - ... - u_k
/// are at most tol in magnitude.
bool face_derivative_identity(const SimplexPolynomial& f, double tol = 1e-12);

/// One total-degree block of the operator in the monomial basis.
/// With max_off_diagonal zero the block is diagonal and its eigenvalues are
/// the entries of `diagonal`.
struct SpectrumBlock {
  int degree = 0;
  std::vector<double> diagonal;
  double max_off_diagonal = 0.0;  // largest same-degree off-diagonal entry
};

struct OperatorSpectrum {
  std::vector<SpectrumBlock> blocks;
  /// Largest coefficient landing on a monomial of higher degree than its
  /// source; zero when the operator is lower triangular by degree.
  double max_raising_coeff = 0.0;
};

/// Matrix of generalized_jacobi_op on polynomials of total degree <= max_degree
/// in k variables, read block by block.
OperatorSpectrum operator_spectrum(int k, int N, int max_degree);

}  // namespace cpheat
