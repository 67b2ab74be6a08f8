#include "cpheat/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpheat {

// ---------------------------------------------------------------- 1D

Polynomial1D::Polynomial1D(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial1D Polynomial1D::constant(double c) { return Polynomial1D({c}); }

Polynomial1D Polynomial1D::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial1D(std::move(v));
}

Polynomial1D Polynomial1D::jacobi_shifted(int n, const JacobiParams& p) {
  p.validate();
  const Polynomial1D x({-1.0, 2.0});  // 2u - 1
  Polynomial1D prev = constant(1.0);
  if (n == 0) return prev;
  Polynomial1D cur = 0.5 * (constant(p.alpha - p.beta) + (p.alpha + p.beta + 2.0) * x);
  const double ab = p.alpha + p.beta;
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + ab;
    const double a1 = 2.0 * m * (m + ab) * (s - 2.0);
    const double a2 = (s - 1.0) * (p.alpha * p.alpha - p.beta * p.beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (m + p.alpha - 1.0) * (m + p.beta - 1.0) * s;
    Polynomial1D next = (1.0 / a1) * ((constant(a2) + a3 * x) * cur - a4 * prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial1D Polynomial1D::one_minus_u_pow(int m) {
  Polynomial1D r = constant(1.0);
  const Polynomial1D f({1.0, -1.0});
  for (int i = 0; i < m; ++i) r = r * f;
  return r;
}

double Polynomial1D::coeff(int i) const {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0.0;
}

double Polynomial1D::operator()(double u) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * u + *it;
  return r;
}

Polynomial1D Polynomial1D::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial1D(std::move(d));
}

double Polynomial1D::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial1D& Polynomial1D::operator+=(const Polynomial1D& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial1D& Polynomial1D::operator-=(const Polynomial1D& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial1D& Polynomial1D::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial1D operator*(const Polynomial1D& a, const Polynomial1D& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<double> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial1D(std::move(r));
}

void Polynomial1D::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

// ---------------------------------------------------------------- k-variate

SimplexPolynomial::SimplexPolynomial(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("SimplexPolynomial: k must be >= 1");
}

SimplexPolynomial SimplexPolynomial::constant(int k, double c) {
  SimplexPolynomial p(k);
  p.add_term(Exponent(k, 0), c);
  return p;
}

SimplexPolynomial SimplexPolynomial::variable(int k, int i) {
  if (i < 0 || i >= k) throw std::out_of_range("SimplexPolynomial::variable: bad index");
  Exponent e(k, 0);
  e[i] = 1;
  return monomial(e);
}

SimplexPolynomial SimplexPolynomial::monomial(const Exponent& e, double c) {
  SimplexPolynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

SimplexPolynomial SimplexPolynomial::one_minus_sum(int k) {
  SimplexPolynomial p = constant(k, 1.0);
  for (int i = 0; i < k; ++i) p -= variable(k, i);
  return p;
}

SimplexPolynomial SimplexPolynomial::dirichlet_weight(int k, int N) {
  if (N - k - 1 < 0) throw std::invalid_argument("dirichlet_weight: needs k <= N-1");
  return one_minus_sum(k).pow(N - k - 1);
}

void SimplexPolynomial::add_term(const Exponent& e, double c) {
  if (static_cast<int>(e.size()) != k_) {
    throw std::invalid_argument("SimplexPolynomial: exponent length mismatch");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double SimplexPolynomial::coeff(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

int SimplexPolynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

double SimplexPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool SimplexPolynomial::is_zero(double tol) const { return max_abs_coeff() <= tol; }

double SimplexPolynomial::operator()(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != k_) {
    throw std::invalid_argument("SimplexPolynomial: point dimension mismatch");
  }
  double r = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < k_; ++i) {
      for (int p = 0; p < e[i]; ++p) m *= u[i];
    }
    r += m;
  }
  return r;
}

SimplexPolynomial SimplexPolynomial::derivative(int i) const {
  SimplexPolynomial r(k_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

SimplexPolynomial SimplexPolynomial::times_variable(int i) const {
  SimplexPolynomial r(k_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[i] += 1;
    r.add_term(f, c);
  }
  return r;
}

SimplexPolynomial SimplexPolynomial::pow(int m) const {
  SimplexPolynomial r = constant(k_, 1.0);
  for (int i = 0; i < m; ++i) r = r * *this;
  return r;
}

SimplexPolynomial SimplexPolynomial::on_face(int i) const {
  SimplexPolynomial replacement = constant(k_, 1.0);
  for (int j = 0; j < k_; ++j) {
    if (j != i) replacement -= variable(k_, j);
  }
  std::vector<SimplexPolynomial> powers{constant(k_, 1.0)};
  SimplexPolynomial r(k_);
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(powers.size()) <= e[i]) powers.push_back(powers.back() * replacement);
    Exponent rest = e;
    rest[i] = 0;
    r += monomial(rest, c) * powers[e[i]];
  }
  return r;
}

SimplexPolynomial& SimplexPolynomial::operator+=(const SimplexPolynomial& o) {
  check_same_k(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SimplexPolynomial& SimplexPolynomial::operator-=(const SimplexPolynomial& o) {
  check_same_k(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SimplexPolynomial& SimplexPolynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SimplexPolynomial operator*(const SimplexPolynomial& a, const SimplexPolynomial& b) {
  a.check_same_k(b);
  SimplexPolynomial r(a.k_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      SimplexPolynomial::Exponent e(a.k_);
      for (int i = 0; i < a.k_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

void SimplexPolynomial::check_same_k(const SimplexPolynomial& o) const {
  if (o.k_ != k_) throw std::invalid_argument("SimplexPolynomial: variable count mismatch");
}

std::vector<SimplexPolynomial::Exponent> exponents_of_degree(int k, int d) {
  std::vector<SimplexPolynomial::Exponent> out;
  SimplexPolynomial::Exponent e(k, 0);
  // Enumerate compositions of d into k nonnegative parts.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace cpheat
