#include <doctest.h>

#include <cmath>
#include <vector>

#include "dln/rng.hpp"

using dln::rng::Philox;

TEST_CASE("philox streams are reproducible and distinct") {
  Philox a(42, 0), b(42, 0), c(42, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
}

TEST_CASE("uniform stays inside the open interval") {
  Philox g(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = g.next_double();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  Philox g(123);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = g.next_normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("gamma sampler matches mean and variance") {
  for (double shape : {1.5, 4.0, 33.0}) {
    Philox g(99, static_cast<std::uint64_t>(shape));
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = g.next_gamma(shape);
      s1 += x;
      s2 += x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.02));
    CHECK(var == doctest::Approx(shape).epsilon(0.06));
  }
}

TEST_CASE("stream splitting restarts the counter") {
  Philox base(5);
  Philox s1 = base.stream(17);
  Philox s2 = base.stream(17);
  CHECK(s1.next_u64() == s2.next_u64());
}
