#include "cpheat/orthopoly_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpheat {

namespace {

void check_N(int N) {
  if (N < 3) throw std::invalid_argument("simplex polynomials need N >= 3");
}

double binomial(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b *= static_cast<double>(n - r + i) / i;
  return b;
}

}  // namespace

void SimplexIndex::validate() const {
  if (n < 0 || j < 0 || j > n) {
    throw std::invalid_argument("SimplexIndex: need 0 <= j <= n");
  }
}

bool SimplexPoint::in_closed_simplex(double slack) const {
  return u1 >= -slack && u2 >= -slack && u1 + u2 <= 1.0 + slack;
}

bool SimplexPoint::in_open_simplex() const { return u1 > 0.0 && u2 > 0.0 && u1 + u2 < 1.0; }

double simplex_q(const SimplexIndex& idx, int N, const SimplexPoint& p) {
  idx.validate();
  check_N(N);
  if (!p.in_closed_simplex()) {
    throw std::domain_error("simplex_q: point (" + std::to_string(p.u1) + ", " +
                            std::to_string(p.u2) + ") outside the closed simplex");
  }
  const int m = idx.n - idx.j;
  const double x1 = std::clamp(2.0 * p.u1 - 1.0, -1.0, 1.0);
  const double radial = jacobi_p(m, {N - 2.0 + 2.0 * idx.j, 0.0}, x1);
  // (1-u1)^j P_j(w/s) with s = 1-u1, w = 2u2 - s.
  const double s = 1.0 - p.u1;
  const double angular = jacobi_p_homogeneous(idx.j, {N - 3.0, 0.0}, s, 2.0 * p.u2 - s);
  return radial * angular;
}

double simplex_q_norm_sq(const SimplexIndex& idx, int N) {
  idx.validate();
  check_N(N);
  return 1.0 / ((2.0 * idx.n + N - 1.0) * (2.0 * idx.j + N - 2.0));
}

double koornwinder_c(int j, int q, int n, int N) {
  check_N(N);
  if (j < 0 || q < 0 || j > n || q > n) {
    throw std::invalid_argument("koornwinder_c: need j, q <= n");
  }
  return (N - 2.0) / (N - 2.0 + q + j) * binomial(n, q) * binomial(n, j) *
         pochhammer(N + n - 1.0, q) * pochhammer(N + n - 1.0, j) /
         (pochhammer(N - 2.0 + j, q) * pochhammer(N - 2.0 + q, j));
}

double simplex_q_norm_sq_via_c(const SimplexIndex& idx, int N) {
  idx.validate();
  check_N(N);
  const int n = idx.n;
  const int j = idx.j;
  const double num = jacobi_p_at_one(n - j, {N - 2.0 + 2.0 * j, 0.0}) *
                     jacobi_p_at_one(j, {N - 3.0, 0.0});
  const double pn1 = jacobi_p_at_one(n, {N - 2.0, 0.0});
  return num * num / ((N - 2.0) * (2.0 * n + N - 1.0) * pn1 * pn1 * koornwinder_c(j, j, n, N));
}

SimplexPolynomial simplex_q_polynomial(const SimplexIndex& idx, int N) {
  idx.validate();
  check_N(N);
  const int j = idx.j;
  const Polynomial1D radial = Polynomial1D::jacobi_shifted(idx.n - j, {N - 2.0 + 2.0 * j, 0.0});
  const Polynomial1D angular = Polynomial1D::jacobi_shifted(j, {N - 3.0, 0.0});

  SimplexPolynomial r1(2);
  for (int i = 0; i <= radial.degree(); ++i) r1.add_term({i, 0}, radial.coeff(i));

  // (1-u1)^j sum_p a_p (u2/(1-u1))^p = sum_p a_p u2^p (1-u1)^{j-p}.
  SimplexPolynomial r2(2);
  for (int p = 0; p <= angular.degree(); ++p) {
    const Polynomial1D one_minus = Polynomial1D::one_minus_u_pow(j - p);
    for (int i = 0; i <= one_minus.degree(); ++i) {
      r2.add_term({i, p}, angular.coeff(p) * one_minus.coeff(i));
    }
  }
  return r1 * r2;
}

}  // namespace cpheat
