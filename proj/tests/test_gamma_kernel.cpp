#include <doctest.h>

#include <cmath>
#include <complex>

#include "dln/gamma_kernel.hpp"

using dln::gamma_kernel::digamma;
using dln::gamma_kernel::log_gamma;
using cplx = std::complex<double>;

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}
}  // namespace

TEST_CASE("log_gamma known real values") {
  CHECK(std::abs(log_gamma(cplx(1.0)).real()) < 1e-14);
  CHECK(std::abs(log_gamma(cplx(1.0)).imag()) < 1e-14);
  CHECK(log_gamma(cplx(5.0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(cplx(0.5)).real() ==
        doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
}

TEST_CASE("log_gamma complex value against a 60-digit reflection+recurrence oracle") {
  // mpmath, 60 digits: loggamma(3+4i)
  const cplx want(-1.7566267846037841105306041816, 4.7426644380346579281948894076);
  CHECK(rel_err(log_gamma(cplx(3.0, 4.0)), want) < 1e-13);
}

TEST_CASE("digamma known values") {
  CHECK(digamma(cplx(1.0)).real() == doctest::Approx(-kEulerGamma).epsilon(1e-13));
  CHECK(digamma(cplx(2.0)).real() ==
        doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
  // Leading Stirling terms at x = 1000.
  CHECK(std::abs(digamma(cplx(1000.0)).real() -
                 (std::log(1000.0) - 1.0 / 2000.0)) < 1e-7);
  // mpmath, 60 digits: digamma(1.5+2.5i)
  const cplx want(0.98634056629390090765213632274, 1.1861804687361432327469430394);
  CHECK(rel_err(digamma(cplx(1.5, 2.5)), want) < 1e-13);
}

TEST_CASE("recurrence identity on a wide argument range") {
  // 1e-12 analytic budget plus the double-representation floor of the two
  // log-gamma values themselves (ulp(logGamma(1e4)) alone is 1.5e-11).
  for (double lx = std::log(0.5); lx <= std::log(1e4); lx += 0.37) {
    const double x = std::exp(lx);
    for (double y : {0.0, 0.3, 2.0, 50.0, 3000.0}) {
      const cplx z(x, y);
      if (std::abs(z) < 0.5 || std::abs(z) > 1e4) continue;
      const cplx g0 = log_gamma(z);
      const cplx g1 = log_gamma(z + 1.0);
      const double floor =
          4.0 * 2.22e-16 * (std::abs(g0) + std::abs(g1));
      CHECK(std::abs(g1 - g0 - std::log(z)) < 1e-12 + floor);
    }
  }
}

TEST_CASE("conjugate symmetry") {
  for (double x : {0.7, 3.0, 42.0}) {
    for (double y : {0.5, 4.0, 300.0}) {
      const cplx z(x, y);
      CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(log_gamma(z))) <
            1e-13 * std::max(1.0, std::abs(log_gamma(z))));
      CHECK(std::abs(digamma(std::conj(z)) - std::conj(digamma(z))) < 1e-12);
    }
  }
}

TEST_CASE("central differences of log_gamma match digamma") {
  const double h = 1e-5;
  for (double x = 1.0; x <= 100.0; x *= 1.9) {
    const double fd =
        (log_gamma(cplx(x + h)).real() - log_gamma(cplx(x - h)).real()) / (2 * h);
    CHECK(std::abs(fd - digamma(cplx(x)).real()) < 1e-8);
  }
}

TEST_CASE("poles throw") {
  CHECK_THROWS_AS((void)log_gamma(cplx(0.0)), std::domain_error);
  CHECK_THROWS_AS((void)log_gamma(cplx(-2.0)), std::domain_error);
  CHECK_THROWS_AS((void)digamma(cplx(-1.0)), std::domain_error);
}

TEST_CASE("digamma log-bound on the real axis") {
  for (double x = 10.0; x <= 1e5; x *= 3.0) {
    const double gap = std::abs(digamma(cplx(x)).real() - std::log(x));
    CHECK(gap <= 1.0 / (2.0 * x) + 2.0 / (12.0 * x * x));
  }
}
