#include "cpheat/pde_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cpheat/special_functions.hpp"
#include "cpheat/summation.hpp"

namespace cpheat {

namespace {

const Polynomial1D kU({0.0, 1.0});
const Polynomial1D kUOneMinusU({0.0, 1.0, -1.0});

void check_k(int k, int N) {
  if (N < 2) throw std::invalid_argument("operator: N must be >= 2");
  if (k < 1 || k > N - 1) throw std::invalid_argument("operator: need 1 <= k <= N-1");
}

// sum (u_i - u_i^2) d_ii g - sum_{i != j} u_i u_j d_ij g
SimplexPolynomial second_order_part(const SimplexPolynomial& g) {
  const int k = g.k();
  SimplexPolynomial r(k);
  std::vector<SimplexPolynomial> d1;
  d1.reserve(k);
  for (int i = 0; i < k; ++i) d1.push_back(g.derivative(i));
  for (int i = 0; i < k; ++i) {
    const SimplexPolynomial dii = d1[i].derivative(i);
    r += dii.times_variable(i) - dii.times_variable(i).times_variable(i);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      r -= d1[i].derivative(j).times_variable(i).times_variable(j);
    }
  }
  return r;
}

// sum (a + b u_i) d_i g
SimplexPolynomial first_order_part(const SimplexPolynomial& g, double a, double b) {
  SimplexPolynomial r(g.k());
  for (int i = 0; i < g.k(); ++i) {
    const SimplexPolynomial di = g.derivative(i);
    r += a * di + b * di.times_variable(i);
  }
  return r;
}

}  // namespace

Polynomial1D jacobi_op_1d(const Polynomial1D& g, int N) {
  check_k(1, N);
  const Polynomial1D d = g.derivative();
  return kUOneMinusU * d.derivative() + Polynomial1D({1.0, -static_cast<double>(N)}) * d;
}

Polynomial1D script_l_1d(const Polynomial1D& f, int N) {
  check_k(1, N);
  const Polynomial1D d = f.derivative();
  return kUOneMinusU * d.derivative() + Polynomial1D({1.0, N - 4.0}) * d + (N - 2.0) * f;
}

SimplexPolynomial generalized_jacobi_op(const SimplexPolynomial& g, int N) {
  check_k(g.k(), N);
  return first_order_part(g, 1.0, -static_cast<double>(N)) + second_order_part(g);
}

SimplexPolynomial script_l_k(const SimplexPolynomial& f, int N) {
  const int k = f.k();
  check_k(k, N);
  return static_cast<double>(k) * (N - k - 1) * f +
         first_order_part(f, 1.0, N - 4.0 - 2.0 * (k - 1)) + second_order_part(f);
}

double heat_residual_1d(double t, double c, int N, const Truncation& tr,
                        std::span<const double> u_grid, double dt) {
  if (!(dt > 0.0) || !(t > 2.0 * dt)) {
    throw std::invalid_argument("heat_residual_1d: need dt > 0 and t > 2 dt");
  }
  const Kernel1D ahead(t + dt, c, N, tr);
  const Kernel1D behind(t - dt, c, N, tr);
  const JacobiParams p{N - 2.0, 0.0};
  const auto pc = jacobi_p_all(tr.n_max, p, 2.0 * c - 1.0);
  double worst = 0.0;
  for (double u : u_grid) {
    const double fd = (ahead.series(u) - behind.series(u)) / (2.0 * dt);
    const auto pu = jacobi_p_all(tr.n_max, p, 2.0 * u - 1.0);
    CompensatedSum exact;
    for (int n = 0; n <= tr.n_max; ++n) {
      const double lambda = static_cast<double>(n) * (n + N - 1);
      exact += -lambda * std::exp(-lambda * t) * (2.0 * n + N - 1.0) * pc[n] * pu[n];
    }
    worst = std::max(worst, std::abs(fd - exact.value()));
  }
  return worst;
}

bool face_derivative_identity(const SimplexPolynomial& f, double tol) {
  const int k = f.k();
  for (int i = 0; i < k; ++i) {
    const SimplexPolynomial di = f.derivative(i);
    for (int j = i + 1; j < k; ++j) {
      if (!(di - f.derivative(j)).on_face(0).is_zero(tol)) return false;
    }
  }
  return true;
}

OperatorSpectrum operator_spectrum(int k, int N, int max_degree) {
  check_k(k, N);
  OperatorSpectrum out;
  for (int d = 0; d <= max_degree; ++d) {
    const auto basis = exponents_of_degree(k, d);
    SpectrumBlock block{d, {}, 0.0};
    for (const auto& e_col : basis) {
      const SimplexPolynomial image = generalized_jacobi_op(SimplexPolynomial::monomial(e_col), N);
      for (const auto& [e, v] : image.terms()) {
        int deg = 0;
        for (int x : e) deg += x;
        if (deg > d) {
          out.max_raising_coeff = std::max(out.max_raising_coeff, std::abs(v));
        } else if (deg == d && e != e_col) {
          block.max_off_diagonal = std::max(block.max_off_diagonal, std::abs(v));
        }
      }
      block.diagonal.push_back(image.coeff(e_col));
    }
    out.blocks.push_back(block);
  }
  return out;
}

}  // namespace cpheat
