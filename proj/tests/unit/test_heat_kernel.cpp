#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cpheat/heat_kernel.hpp"
#include "cpheat/special_functions.hpp"

using namespace cpheat;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Closed-form CDF from the antiderivative
//   int_0^U P_n^{N-2,0}(2u-1)(1-u)^{N-2} du = -U (1-U)^{N-1} P_{n-1}^{N-1,1}(2U-1) / n.
double cdf_oracle(double t, double c, double U, int N, int n_max) {
  double s = 1.0 - std::pow(1.0 - U, N - 1);  // n = 0 term
  for (int n = 1; n <= n_max; ++n) {
    const double amp = std::exp(-n * (n + N - 1.0) * t) * (2.0 * n + N - 1.0) *
                       jacobi_p(n, {N - 2.0, 0.0}, 2.0 * c - 1.0);
    s += amp * -U * std::pow(1.0 - U, N - 1) * jacobi_p(n - 1, {N - 1.0, 1.0}, 2.0 * U - 1.0) / n;
  }
  return s;
}

}  // namespace

TEST_CASE("auto_truncation") {
  const Truncation tr = auto_truncation(1.0, 3, 1e-12);
  CHECK(tr.n_max >= 1);
  CHECK(tr.n_max <= 8);
  CHECK(tr.achieved_bound <= 1e-12);
  CHECK(auto_truncation(50.0, 4, 1e-10).n_max == 1);
  int prev = 0;
  for (double tol : {1e-4, 1e-8, 1e-12, 1e-15}) {
    const int n = auto_truncation(0.1, 5, tol).n_max;
    CHECK(n >= prev);
    prev = n;
  }
  CHECK_THROWS_AS(auto_truncation(1e-9, 3, 1e-12), TruncationError);
  CHECK_THROWS_AS(auto_truncation(0.0, 3, 1e-12), std::invalid_argument);
  // The certified tail dominates the actual tail of term bounds.
  double tail = 0.0;
  for (int n = tr.n_max + 1; n < 60; ++n) tail += term_bound(n, 1.0, 3);
  CHECK(tail <= tr.achieved_bound);
}

TEST_CASE("fixed_truncation records its tail") {
  const Truncation tr = fixed_truncation(3, 0.5, 3);
  CHECK(tr.n_max == 3);
  double tail = 0.0;
  for (int n = 4; n < 60; ++n) tail += term_bound(n, 0.5, 3);
  CHECK(tr.achieved_bound == doctest::Approx(tail).epsilon(1e-12));
}

TEST_CASE("stationary limit of the 1D density") {
  for (int N : {2, 3, 6}) {
    const double t = 40.0;
    const Truncation tr = auto_truncation(t, N, 1e-14);
    for (double u : {0.0, 0.3, 0.9}) {
      const double f = density_1d({t, 0.4, u, N}, tr);
      CHECK(f == doctest::Approx((N - 1.0) * std::pow(1.0 - u, N - 2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("N = 2 at c = u = 1 against a long direct sum") {
  const double t = 0.5;
  double direct = 0.0;
  for (int n = 0; n < 200; ++n) direct += std::exp(-n * (n + 1.0) * t) * (2.0 * n + 1.0);
  const double f = density_1d({t, 1.0, 1.0, 2}, auto_truncation(t, 2, 1e-15));
  CHECK(f == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("normalization by an independent adaptive rule") {
  for (int N : {2, 3, 5, 10}) {
    for (double t : {0.05, 0.2, 1.0}) {
      for (double c : {0.0, 0.5, 1.0}) {
        const Kernel1D k(t, c, N, auto_truncation(t, N, 1e-13));
        const double total =
            gauss_kronrod<double, 61>::integrate([&](double u) { return k.density(u); }, 0.0, 1.0,
                                                 15, 1e-14);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(normalization_1d(t, c, N) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("eigen transform") {
  CHECK(eigen_transform_check(0, 0.3, 0.7, 4).lhs == doctest::Approx(1.0).epsilon(1e-12));
  const auto e1 = eigen_transform_check(1, 0.2, 0.3, 3);
  CHECK(e1.rhs == doctest::Approx(std::exp(-0.6) * jacobi_p(1, {1.0, 0.0}, -0.4)));
  CHECK(e1.abs_diff() < 1e-9);
  for (int n = 0; n <= 6; ++n) CHECK(eigen_transform_check(n, 0.1, 0.15, 5).abs_diff() < 1e-9);
}

TEST_CASE("Chapman-Kolmogorov") {
  const auto ck = chapman_kolmogorov_check(0.25, 0.25, 0.2, 0.6, 3);
  CHECK(ck.abs_diff() < 1e-8);
  CHECK(ck.lhs > 0.0);
  // A long second leg forgets the start.
  const auto far = chapman_kolmogorov_check(0.1, 30.0, 0.9, 0.4, 4);
  CHECK(far.lhs == doctest::Approx(3.0 * 0.36).epsilon(1e-10));
}

TEST_CASE("positivity up to the certified tail") {
  for (int N : {2, 3, 5, 10}) {
    for (double t : {0.05, 0.2, 1.0}) {
      const Truncation tr = auto_truncation(t, N, 1e-13);
      for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const Kernel1D k(t, c, N, tr);
        double lowest = 1.0;
        for (int i = 0; i < 200; ++i) lowest = std::min(lowest, k.density(i / 199.0));
        CHECK(lowest >= -(tr.achieved_bound + 1e-12));
      }
    }
  }
}

TEST_CASE("reversibility against the weight") {
  for (int N : {2, 3, 5}) {
    const double t = 0.2;
    const Truncation tr = auto_truncation(t, N, 1e-13);
    for (double c : {0.1, 0.5, 0.8}) {
      for (double u : {0.05, 0.4, 0.95}) {
        const double a = Kernel1D(t, c, N, tr).density(u) * std::pow(1.0 - c, N - 2);
        const double b = Kernel1D(t, u, N, tr).density(c) * std::pow(1.0 - u, N - 2);
        CHECK(a == doctest::Approx(b).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("CDF against the closed-form antiderivative") {
  for (int N : {2, 3, 5}) {
    for (double t : {0.05, 0.5}) {
      const Truncation tr = auto_truncation(t, N, 1e-13);
      const Kernel1D k(t, 0.3, N, tr);
      CHECK(k.cdf(0.0) == 0.0);
      CHECK(k.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-10));
      double prev = 0.0;
      for (double U : {0.1, 0.25, 0.5, 0.8, 0.99}) {
        const double F = k.cdf(U);
        CHECK(F == doctest::Approx(cdf_oracle(t, 0.3, U, N, tr.n_max)).epsilon(1e-11).scale(1.0));
        CHECK(F >= prev);
        prev = F;
      }
    }
  }
}

TEST_CASE("truncation diagnostics") {
  SeriesDiagnostics diag;
  const DensityQuery1 q{0.2, 0.3, 0.6, 3};
  density_1d(q, auto_truncation(0.2, 3, 1e-12), &diag);
  CHECK_FALSE(diag.truncation_warning);
  // A cutoff certified for a later time is too short here.
  density_1d({0.005, 0.3, 0.3, 3}, auto_truncation(2.0, 3, 1e-12), &diag);
  CHECK(diag.truncation_warning);
}

TEST_CASE("query validation") {
  const Truncation tr = auto_truncation(1.0, 3, 1e-10);
  CHECK_THROWS_AS(density_1d({0.0, 0.3, 0.3, 3}, tr), std::invalid_argument);
  CHECK_THROWS_AS(density_1d({1.0, 1.3, 0.3, 3}, tr), std::domain_error);
  CHECK_THROWS_AS(density_1d({1.0, 0.3, -0.1, 3}, tr), std::domain_error);
  CHECK_THROWS_AS(density_1d({1.0, 0.3, 0.3, 1}, tr), std::invalid_argument);
  CHECK_THROWS_AS(density_2d({1.0, {0.3, 0.3}, {0.1, 0.1}, 2}, tr), std::invalid_argument);
  CHECK_THROWS_AS(density_2d({1.0, {0.8, 0.3}, {0.1, 0.1}, 3}, tr), std::domain_error);
  // Boundary points are allowed.
  CHECK(density_1d({1.0, 0.0, 1.0, 3}, tr) == doctest::Approx(0.0));
}

TEST_CASE("2D density: stationary limit, symmetry, normalization") {
  for (int N : {3, 4, 6}) {
    const Truncation far = auto_truncation(40.0, N, 1e-14, 2);
    const double f = density_2d({40.0, {0.2, 0.1}, {0.3, 0.3}, N}, far);
    CHECK(f == doctest::Approx((N - 1.0) * (N - 2.0) * std::pow(0.4, N - 3)).epsilon(1e-12));

    const double t = 0.2;
    const Truncation tr = auto_truncation(t, N, 1e-13, 2);
    const SimplexPoint c{0.3, 0.2};
    const SimplexPoint u{0.1, 0.6};
    const double a = density_2d({t, c, u, N}, tr) * std::pow(1.0 - c.u1 - c.u2, N - 3);
    const double b = density_2d({t, u, c, N}, tr) * std::pow(1.0 - u.u1 - u.u2, N - 3);
    CHECK(a == doctest::Approx(b).epsilon(1e-11));

    for (double tt : {0.05, 0.2, 1.0}) {
      CHECK(normalization_2d(tt, {0.25, 0.5}, N) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("2D marginal equals the 1D density") {
  for (int N : {3, 4, 6}) {
    for (double t : {0.05, 0.3}) {
      const Kernel1D k1(t, 0.35, N, auto_truncation(t, N, 1e-13));
      for (double c2 : {0.0, 0.3, 0.65}) {
        for (double u1 : {0.05, 0.5, 0.95}) {
          CHECK(marginal_2d(t, {0.35, c2}, u1, N) ==
                doctest::Approx(k1.density(u1)).epsilon(1e-8).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("2D density integrates to 1 by nested adaptive quadrature") {
  const int N = 4;
  const double t = 0.1;
  const Kernel2D k(t, {0.1, 0.7}, N, auto_truncation(t, N, 1e-13, 2));
  const double total = gauss_kronrod<double, 31>::integrate(
      [&](double u1) {
        return gauss_kronrod<double, 31>::integrate(
            [&](double u2) { return k.density({u1, u2}); }, 0.0, 1.0 - u1, 10, 1e-13);
      },
      0.0, 1.0, 10, 1e-13);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}
