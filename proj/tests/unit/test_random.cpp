#include <doctest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "cpheat/random.hpp"

using namespace cpheat;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("inverse normal CDF") {
  const boost::math::normal_distribution<double> nd;
  for (double p : {1e-10, 1e-5, 0.01, 0.02425, 0.2, 0.5, 0.77, 0.97575, 0.999, 1.0 - 1e-9}) {
    const double ref = boost::math::quantile(nd, p);
    CHECK(inverse_normal_cdf(p) == doctest::Approx(ref).epsilon(2e-9).scale(1.0));
  }
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS(inverse_normal_cdf(0.0));
  CHECK_THROWS(inverse_normal_cdf(1.0));
}

TEST_CASE("streams are deterministic and distinct") {
  RandomStream a(7, 3);
  RandomStream b(7, 3);
  RandomStream c(7, 4);
  RandomStream d(8, 3);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    same_c += x == c.uniform();
    same_d += x == d.uniform();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniform and normal moments") {
  RandomStream r(123, 0);
  const int n = 200000;
  double su = 0.0;
  double sz = 0.0;
  double szz = 0.0;
  for (int i = 0; i < n; ++i) {
    su += r.uniform();
    const double z = r.normal();
    sz += z;
    szz += z * z;
  }
  // Five standard errors.
  CHECK(std::abs(su / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sz / n) < 5.0 / std::sqrt(n));
  CHECK(std::abs(szz / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}
