#include "cpheat/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cpheat {

namespace {

// Three-term recurrence of the monic Jacobi polynomials on [-1,1] for the
// weight (1-x)^alpha (1+x)^beta: pi_{k+1} = (x - diag_k) pi_k - off_k pi_{k-1}.
struct MonicRecurrence {
  std::vector<double> diag;  // diag_0 .. diag_{m-1}
  std::vector<double> off;   // off_0 unused, off_1 .. off_m
};

MonicRecurrence jacobi_recurrence(int m, double alpha, double beta) {
  MonicRecurrence r;
  r.diag.resize(m);
  r.off.assign(m + 1, 0.0);
  const double ab = alpha + beta;
  r.diag[0] = (beta - alpha) / (ab + 2.0);
  for (int n = 1; n < m; ++n) {
    const double s = 2.0 * n + ab;
    r.diag[n] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int n = 1; n <= m; ++n) {
    if (n == 1) {
      r.off[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
      continue;
    }
    const double s = 2.0 * n + ab;
    r.off[n] = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
  }
  return r;
}

// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
// On exit d holds eigenvalues and z the first components of the eigenvectors.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) {
          throw ConvergenceError("gauss_jacobi_rule: QL iteration did not converge", l);
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          const double zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

double beta_function(double x, double y) {
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double QuadratureRule::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double SimplexRule2::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

QuadratureRule gauss_jacobi_rule(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi_rule: m must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw std::invalid_argument("gauss_jacobi_rule: exponents must exceed -1");
  }
  // On x = 2u - 1 the weight (1-u)^a u^b is (1-x)^a (1+x)^b up to a constant.
  const auto rec = jacobi_recurrence(m, a, b);
  std::vector<double> d = rec.diag;
  std::vector<double> e(m, 0.0);
  for (int i = 0; i + 1 < m; ++i) e[i] = std::sqrt(rec.off[i + 1]);
  std::vector<double> z(m, 0.0);
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);
  std::sort(d.begin(), d.end());

  const double mass = beta_function(b + 1.0, a + 1.0);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = d[i];
    // Newton polish on the monic degree-m polynomial.
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x - rec.diag[0];
      double dp0 = 0.0, dp1 = 1.0;
      for (int k = 1; k < m; ++k) {
        const double p2 = (x - rec.diag[k]) * p1 - rec.off[k] * p0;
        const double dp2 = p1 + (x - rec.diag[k]) * dp1 - rec.off[k] * dp0;
        p0 = p1;
        p1 = p2;
        dp0 = dp1;
        dp1 = dp2;
      }
      if (dp1 == 0.0) break;
      const double step = p1 / dp1;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Christoffel weight 1 / sum_k phat_k(x)^2 with orthonormal phat_k.
    double q0 = 0.0;
    double q1 = 1.0 / std::sqrt(mass);
    double sumsq = q1 * q1;
    for (int k = 0; k + 1 < m; ++k) {
      const double q2 = ((x - rec.diag[k]) * q1 - (k > 0 ? std::sqrt(rec.off[k]) : 0.0) * q0) /
                        std::sqrt(rec.off[k + 1]);
      q0 = q1;
      q1 = q2;
      sumsq += q1 * q1;
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / sumsq;
  }
  for (int i = 0; i < m; ++i) {
    if (!(rule.nodes[i] > 0.0 && rule.nodes[i] < 1.0) ||
        (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])) || !(rule.weights[i] > 0.0)) {
      throw ConvergenceError("gauss_jacobi_rule: invalid node after polishing", i);
    }
  }
  return rule;
}

QuadratureRule gauss_legendre_rule(int m, double lo, double hi) {
  QuadratureRule rule = gauss_jacobi_rule(m, 0.0, 0.0);
  const double width = hi - lo;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = lo + width * rule.nodes[i];
    rule.weights[i] *= width;
  }
  return rule;
}

SimplexRule2 simplex_rule_2(int m, int N) {
  if (N < 3) throw std::invalid_argument("simplex_rule_2: N must be >= 3");
  // u1 = x, u2 = (1-x) y:  du1 du2 = (1-x) dx dy and
  // s_2 = (1-x)^{N-3} (1-y)^{N-3}, so the x-weight is (1-x)^{N-2} and the
  // y-weight is (1-y)^{N-3}.
  const QuadratureRule outer = gauss_jacobi_rule(m, N - 2.0, 0.0);
  const QuadratureRule inner = gauss_jacobi_rule(m, N - 3.0, 0.0);
  SimplexRule2 rule;
  rule.N = N;
  rule.nodes.reserve(outer.size() * inner.size());
  rule.weights.reserve(outer.size() * inner.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double x = outer.nodes[i];
    for (std::size_t j = 0; j < inner.size(); ++j) {
      rule.nodes.push_back({x, (1.0 - x) * inner.nodes[j]});
      rule.weights.push_back(outer.weights[i] * inner.weights[j]);
    }
  }
  return rule;
}

}  // namespace cpheat
