#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>

#include "cpheat/special_functions.hpp"

using namespace cpheat;

namespace {

// Explicit binomial sum of the Jacobi polynomial in long double,
// independent of the recurrence.
double jacobi_explicit(int n, double a, double b, double x) {
  auto binom = [](long double top, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r *= (top - i) / (i + 1);
    return r;
  };
  const long double lo = (static_cast<long double>(x) - 1.0L) / 2.0L;
  const long double hi = (static_cast<long double>(x) + 1.0L) / 2.0L;
  long double sum = 0.0L;
  for (int s = 0; s <= n; ++s) {
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(lo, s) * std::pow(hi, n - s);
  }
  return static_cast<double>(sum);
}

// Boost where it evaluates; otherwise the untransformed series in long
// double, which is adequate for |z| <= 10.
double hyp1f1_reference(double a, double b, double z) {
  try {
    return boost::math::hypergeometric_1F1(a, b, z);
  } catch (const std::exception&) {
    long double sum = 0.0L;
    long double term = 1.0L;
    for (int k = 0; k < 400; ++k) {
      sum += term;
      term *= (a + k) / ((b + k) * (k + 1.0L)) * z;
    }
    return static_cast<double>(sum);
  }
}

}  // namespace

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(1.0, 6) == 720.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
}

TEST_CASE("jacobi_p agrees with the explicit sum") {
  for (int n = 0; n <= 15; ++n) {
    for (double a : {0.0, 1.0, 3.0, 8.0, -0.5}) {
      for (double b : {0.0, 1.0, 2.5}) {
        for (double x : {-1.0, -0.7, 0.0, 0.31, 0.9, 1.0}) {
          const double ref = jacobi_explicit(n, a, b, x);
          CHECK(jacobi_p(n, {a, b}, x) ==
                doctest::Approx(ref).epsilon(1e-11).scale(std::max(1.0, std::abs(ref))));
        }
      }
    }
  }
}

TEST_CASE("jacobi_p special values") {
  CHECK(jacobi_p(0, {2.0, 5.0}, 0.3) == 1.0);
  CHECK(jacobi_p(1, {0.0, 0.0}, 0.0) == 0.0);
  for (int N : {2, 3, 6}) {
    for (int n = 0; n <= 12; ++n) {
      const double expected = pochhammer(N - 1.0, n) / std::tgamma(n + 1.0);
      CHECK(jacobi_p(n, {N - 2.0, 0.0}, 1.0) == doctest::Approx(expected).epsilon(1e-13));
      CHECK(jacobi_p_at_one(n, {N - 2.0, 0.0}) == doctest::Approx(expected).epsilon(1e-14));
      CHECK(jacobi_p_normalized(n, {N - 2.0, 0.0}, 1.0) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("jacobi_p reflection") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {-0.9, -0.2, 0.4, 0.8}) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(jacobi_p(n, {3.0, 0.0}, x) ==
            doctest::Approx(sign * jacobi_p(n, {0.0, 3.0}, -x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("jacobi_p refuses bad input") {
  CHECK_THROWS_AS(jacobi_p(2, {0.0, 0.0}, 1.0 + 1e-9), std::domain_error);
  CHECK_NOTHROW(jacobi_p(2, {0.0, 0.0}, 1.0 + 1e-13));
  CHECK_THROWS_AS(jacobi_p(2, {-1.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(jacobi_p(2, {0.0, -1.5}, 0.0), std::invalid_argument);
}

TEST_CASE("jacobi_p_all and homogeneous forms") {
  const JacobiParams p{2.0, 0.0};
  const auto all = jacobi_p_all(10, p, 0.37);
  for (int n = 0; n <= 10; ++n) CHECK(all[n] == doctest::Approx(jacobi_p(n, p, 0.37)));

  const double s = 0.6;
  const double w = -0.25;
  const auto hom = jacobi_p_homogeneous_all(8, p, s, w);
  for (int n = 0; n <= 8; ++n) {
    CHECK(hom[n] == doctest::Approx(std::pow(s, n) * jacobi_p(n, p, w / s)).epsilon(1e-13));
    CHECK(jacobi_p_homogeneous(n, p, s, w) == doctest::Approx(hom[n]).epsilon(1e-14));
  }
  // At s = 0 only the leading coefficient (n+a+b+1)_n / (2^n n!) survives.
  for (int n = 0; n <= 8; ++n) {
    const double lead = pochhammer(n + 3.0, n) / (std::pow(2.0, n) * std::tgamma(n + 1.0));
    CHECK(jacobi_p_homogeneous(n, p, 0.0, 0.5) ==
          doctest::Approx(lead * std::pow(0.5, n)).epsilon(1e-13));
  }
}

TEST_CASE("squared norm on [0,1]") {
  using boost::math::quadrature::gauss_kronrod;
  for (int N : {2, 3, 5}) {
    for (int n = 0; n <= 6; ++n) {
      auto f = [&](double u) {
        const double v = jacobi_p(n, {N - 2.0, 0.0}, 2.0 * u - 1.0);
        return v * v * std::pow(1.0 - u, N - 2);
      };
      const double integral = gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0);
      CHECK(integral == doctest::Approx(jacobi_norm_sq_1d(n, N)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel_j matches Boost") {
  for (double alpha : {0.0, 1.0, 2.5, 7.0, 20.0}) {
    for (double x : {0.0, 0.1, 1.0, 3.3, 10.0, 25.0}) {
      const double ref = boost::math::cyl_bessel_j(alpha, x);
      // Power-series cancellation costs about e^{|x|} ulps.
      CHECK(std::abs(bessel_j(alpha, x) - ref) <= 1e-16 * std::exp(x) + 1e-15);
    }
  }
  CHECK(bessel_j(3.0, -1.2) == doctest::Approx(-boost::math::cyl_bessel_j(3.0, 1.2)));
  CHECK_THROWS_AS(bessel_j(0.0, 31.0), std::overflow_error);
  CHECK_THROWS_AS(bessel_j(0.5, -1.0), std::domain_error);
}

TEST_CASE("hyp1f1 matches Boost") {
  for (double a : {1.0, 3.0, 11.0}) {
    for (double b : {2.0, 5.0, 23.0}) {
      for (double z : {-10.0, -2.0, 0.0, 1.5, 5.0, 10.0}) {
        const double ref = hyp1f1_reference(a, b, z);
        CHECK(hyp1f1(a, b, z) == doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
  CHECK(hyp1f1(1.0, 2.0, 0.0) == 1.0);
  CHECK_THROWS_AS(hyp1f1(1.0, -2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hyp1f1(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("spectral data") {
  CHECK(eigenvalue(0, {4, 1}) == 0.0);
  CHECK(eigenvalue(1, {4, 1}) == 4.0);
  CHECK(eigenvalue(3, {5, 2}) == 21.0);
  for (int N : {2, 3, 4, 7}) {
    CHECK(harmonic_dimension(0, N) == doctest::Approx(1.0));
    // Degree one: the adjoint representation of SU(N).
    CHECK(harmonic_dimension(1, N) == doctest::Approx(N * N - 1.0));
  }
  // CP^1 is the 2-sphere: 2n+1.
  for (int n = 0; n <= 6; ++n) CHECK(harmonic_dimension(n, 2) == doctest::Approx(2.0 * n + 1.0));
  CHECK(dirichlet_normalizer(5, 1) == 4.0);
  CHECK(dirichlet_normalizer(5, 3) == 24.0);
}

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW((ModelParams{3, 2}.validate()));
  CHECK_THROWS_AS((ModelParams{3, 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 1}.validate()), std::invalid_argument);
}
