#pragma once

// Dense univariate and sparse multivariate polynomials in the monomial
// basis, with the handful of operations the differential operators need.

#include <map>
#include <span>
#include <vector>

#include "cpheat/special_functions.hpp"

namespace cpheat {

class Polynomial1D {
 public:
  Polynomial1D() = default;
  explicit Polynomial1D(std::vector<double> coeffs);

  static Polynomial1D constant(double c);
  static Polynomial1D monomial(int degree, double c = 1.0);
  /// u -> P_n^{alpha,beta}(2u - 1), expanded in powers of u.
  static Polynomial1D jacobi_shifted(int n, const JacobiParams& p);
  /// (1 - u)^m.
  static Polynomial1D one_minus_u_pow(int m);

  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] double coeff(int i) const;
  [[nodiscard]] double operator()(double u) const;
  [[nodiscard]] Polynomial1D derivative() const;
  [[nodiscard]] double max_abs_coeff() const;

  Polynomial1D& operator+=(const Polynomial1D& o);
  Polynomial1D& operator-=(const Polynomial1D& o);
  Polynomial1D& operator*=(double s);

  friend Polynomial1D operator+(Polynomial1D a, const Polynomial1D& b) { return a += b; }
  friend Polynomial1D operator-(Polynomial1D a, const Polynomial1D& b) { return a -= b; }
  friend Polynomial1D operator*(Polynomial1D a, double s) { return a *= s; }
  friend Polynomial1D operator*(double s, Polynomial1D a) { return a *= s; }
  friend Polynomial1D operator*(const Polynomial1D& a, const Polynomial1D& b);

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Sparse polynomial in k variables u_1..u_k. Exponents are stored as a
/// vector of length k.
class SimplexPolynomial {
 public:
  using Exponent = std::vector<int>;

  explicit SimplexPolynomial(int k = 1);

  static SimplexPolynomial constant(int k, double c);
  static SimplexPolynomial variable(int k, int i);  // u_i, 0-based index
  static SimplexPolynomial monomial(const Exponent& e, double c = 1.0);
  /// 1 - u_1 - ... - u_k.
  static SimplexPolynomial one_minus_sum(int k);
  /// Dirichlet weight s_k = (1 - sum u)^{N-k-1}.
  static SimplexPolynomial dirichlet_weight(int k, int N);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const std::map<Exponent, double>& terms() const { return terms_; }
  [[nodiscard]] double coeff(const Exponent& e) const;
  [[nodiscard]] int total_degree() const;
  [[nodiscard]] double max_abs_coeff() const;
  [[nodiscard]] bool is_zero(double tol = 0.0) const;

  [[nodiscard]] double operator()(std::span<const double> u) const;
  [[nodiscard]] SimplexPolynomial derivative(int i) const;
  [[nodiscard]] SimplexPolynomial times_variable(int i) const;
  [[nodiscard]] SimplexPolynomial pow(int m) const;
  /// Substitute u_i = 1 - sum_{j != i} u_j; the result does not involve u_i.
  [[nodiscard]] SimplexPolynomial on_face(int i = 0) const;

  void add_term(const Exponent& e, double c);

  SimplexPolynomial& operator+=(const SimplexPolynomial& o);
  SimplexPolynomial& operator-=(const SimplexPolynomial& o);
  SimplexPolynomial& operator*=(double s);

  friend SimplexPolynomial operator+(SimplexPolynomial a, const SimplexPolynomial& b) {
    return a += b;
  }
  friend SimplexPolynomial operator-(SimplexPolynomial a, const SimplexPolynomial& b) {
    return a -= b;
  }
  friend SimplexPolynomial operator*(SimplexPolynomial a, double s) { return a *= s; }
  friend SimplexPolynomial operator*(double s, SimplexPolynomial a) { return a *= s; }
  friend SimplexPolynomial operator*(const SimplexPolynomial& a, const SimplexPolynomial& b);

 private:
  void check_same_k(const SimplexPolynomial& o) const;
  int k_;
  std::map<Exponent, double> terms_;
};

/// All exponents of total degree exactly d in k variables, in lexicographic
/// order.
std::vector<SimplexPolynomial::Exponent> exponents_of_degree(int k, int d);

}  // namespace cpheat
