#pragma once

// Jacobi polynomials on the 2-simplex,
//
//   Q_{n-j,j}(u) = (1-u1)^j P_{n-j}^{N-2+2j,0}(2u1-1) P_j^{N-3,0}(2u2/(1-u1) - 1),
//
// orthogonal against s_2(u) = (1-u1-u2)^{N-3} du1 du2.

#include "cpheat/polynomial.hpp"

namespace cpheat {

struct SimplexIndex {
  int n = 0;  // total degree
  int j = 0;  // 0 <= j <= n

  void validate() const;
};

struct SimplexPoint {
  double u1 = 0.0;
  double u2 = 0.0;

  [[nodiscard]] bool in_closed_simplex(double slack = 1e-12) const;
  [[nodiscard]] bool in_open_simplex() const;
};

/// Q_{n-j,j}^{(N)} at a point of the closed simplex. The factor
/// (1-u1)^j P_j(...) is evaluated in homogenized form, so u1 = 1 needs no
/// special casing. Throws std::domain_error outside the closed simplex.
double simplex_q(const SimplexIndex& idx, int N, const SimplexPoint& p);

/// Closed-form squared norm 1 / ((2n+N-1)(2j+N-2)).
double simplex_q_norm_sq(const SimplexIndex& idx, int N);

/// Second expression of the norm through c_{j,j}(n,N):
/// [P_{n-j}^{N-2+2j,0}(1) P_j^{N-3,0}(1)]^2 / ((N-2)(2n+N-1)[P_n^{N-2,0}(1)]^2 c_{j,j}(n,N)).
double simplex_q_norm_sq_via_c(const SimplexIndex& idx, int N);

/// Coefficient c_{j,q}(n,N) of the degree-n reproducing kernel expansion.
double koornwinder_c(int j, int q, int n, int N);

/// Q_{n-j,j}^{(N)} expanded exactly in monomials of (u1, u2).
SimplexPolynomial simplex_q_polynomial(const SimplexIndex& idx, int N);

}  // namespace cpheat
