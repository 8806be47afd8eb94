#include <doctest.h>

#include <cmath>
#include <complex>

#include "dln/meijer_g.hpp"

using namespace dln;
using meijer_g::GArgs;
using meijer_g::QuadratureConfig;

namespace {

NetworkSpec spec_of(long n0, std::vector<long> widths, double sigma2) {
  NetworkSpec s;
  s.n0 = n0;
  s.widths = std::move(widths);
  s.sigma2 = sigma2;
  return s;
}

GArgs args_of(long p, long n0, std::vector<long> widths, double nu,
              double sigma2, long kw = 0, long kd = 0) {
  const double theta2 = nu * static_cast<double>(p) / static_cast<double>(n0);
  return GArgs::make(spec_of(n0, std::move(widths), sigma2),
                     DataSummary::from(p, n0, theta2), kw, kd);
}

// GArgs realizing the L = 0 instance G^{1,0}_{0,1}(z; -; b) = z^b e^{-z}.
GArgs l0_args(double z, double b) {
  const long p = std::lround(2.0 * b);
  return args_of(p, p, {}, 2.0 * z / static_cast<double>(p), 1.0);
}

}  // namespace

TEST_CASE("scale_m log(4M) values") {
  CHECK(meijer_g::scale_m(spec_of(4, {}, 1.0)) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(std::abs(meijer_g::scale_m(spec_of(2, {2}, 1.0))) < 1e-14);
  CHECK(meijer_g::scale_m(spec_of(10, {8, 12}, 1.0)) ==
        doctest::Approx(std::log(8.0 / 960.0)).epsilon(1e-13));
}

TEST_CASE("phi_integrand basics") {
  const GArgs a = args_of(6, 12, {8, 12}, 2.0, 1.0);
  CHECK(std::abs(meijer_g::phi_integrand(0.0, a)) < 1e-13);
  const auto plus = meijer_g::phi_integrand(1.7, a);
  const auto minus = meijer_g::phi_integrand(-1.7, a);
  CHECK(std::abs(minus - std::conj(plus)) < 1e-12);
}

TEST_CASE("phi_integrand against a term-by-term 60-digit oracle") {
  // L=1, N0=6, N1=4, P=2, sigma2=1, ||th*||^2=1, k=0, t=1 (mpmath, 60 digits)
  NetworkSpec s = spec_of(6, {4}, 1.0);
  DataSummary d = DataSummary::from(2, 6, 1.0);
  const GArgs a = GArgs::make(s, d, 0, 0);
  const std::complex<double> want(-0.497127442386662490470054,
                                  0.360596174367418661141963);
  CHECK(std::abs(meijer_g::phi_integrand(1.0, a) - want) < 1e-13);
}

TEST_CASE("L=0 gamma-density identity") {
  for (double b : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
    for (double z : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3}) {
      const double got = meijer_g::log_meijer_g(l0_args(z, b), 1e-12).log_value;
      const double want = b * std::log(z) - z;
      CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
  CHECK(meijer_g::log_meijer_g(l0_args(1.0, 2.0), 1e-12).log_value ==
        doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(meijer_g::log_meijer_g(l0_args(2.0, 3.0), 1e-12).log_value ==
        doctest::Approx(3.0 * std::log(2.0) - 2.0).epsilon(1e-12));
}

TEST_CASE("log_meijer_g against high-precision mpmath goldens") {
  // (L=2, N=(8,12), P=6, nu=2, sigma2=1); mpmath meijerg, 60 digits.
  const GArgs a = args_of(6, 12, {8, 12}, 2.0, 1.0);
  CHECK(meijer_g::log_meijer_g(a, 1e-12).log_value ==
        doctest::Approx(5.842466663412214676664).epsilon(1e-12));
  const GArgs aw = args_of(6, 12, {8, 12}, 2.0, 1.0, 1, 0);
  CHECK(meijer_g::log_meijer_g(aw, 1e-12).log_value ==
        doctest::Approx(9.47548293564206903122).epsilon(1e-12));
  const GArgs ad = args_of(6, 12, {8, 12}, 2.0, 1.0, 0, 1);
  CHECK(meijer_g::log_meijer_g(ad, 1e-12).log_value ==
        doctest::Approx(7.316509542408655016265).epsilon(1e-12));
}

TEST_CASE("imaginary residual stays tiny") {
  const GArgs a = args_of(16, 64, {64}, 2.0, 1.0, 1, 0);
  const auto rep = meijer_g::log_meijer_g(a, 1e-10);
  CHECK(rep.imag_residual <= 1e-8);
}

TEST_CASE("shift-c independence") {
  const GArgs a = args_of(6, 12, {8, 12}, 2.0, 1.0);
  QuadratureConfig full, half;
  full.tol = 1e-11;
  half.tol = 1e-11;
  half.shift_scale = 0.5;
  const double v1 = meijer_g::log_meijer_g(a, full).log_value;
  const double v2 = meijer_g::log_meijer_g(a, half).log_value;
  CHECK(std::abs(v1 - v2) <= 2.0 * full.tol * std::max(1.0, std::abs(v1)));
}

TEST_CASE("delta_log_g") {
  const GArgs a = args_of(16, 32, {64}, 2.0, 1.0);
  CHECK(meijer_g::delta_log_g(a, 0) == 0.0);
  const GArgs l0 = l0_args(2.0, 3.0);
  CHECK(meijer_g::delta_log_g(l0, 3) == 0.0);  // no width entries to shift
  // consistency with two direct evaluations
  const GArgs a1 = args_of(16, 32, {64}, 2.0, 1.0, 1, 0);
  const double direct = meijer_g::log_meijer_g(a1, 1e-10).log_value -
                        meijer_g::log_meijer_g(a, 1e-10).log_value;
  CHECK(meijer_g::delta_log_g(a, 1) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("density is single-peaked in the argument") {
  // Unimodality of the product-of-Gammas density Den(1) as ||th*||^2 varies.
  int switches = 0;
  double prev = 0.0, prev_diff = 0.0;
  bool have_prev = false, have_diff = false;
  for (double lnu = std::log(0.02); lnu <= std::log(50.0); lnu += 0.12) {
    const GArgs a = args_of(6, 12, {8, 12}, std::exp(lnu), 1.0);
    const meijer_g::GammaProduct gp = meijer_g::gamma_product(a);
    const double ld = meijer_g::log_density_at(gp, 1.0).log_value;
    if (have_prev) {
      const double diff = ld - prev;
      if (have_diff && (diff < 0.0) != (prev_diff < 0.0)) ++switches;
      prev_diff = diff;
      have_diff = true;
    }
    prev = ld;
    have_prev = true;
  }
  CHECK(switches == 1);
}

TEST_CASE("quadrature input validation") {
  CHECK_THROWS_AS((void)meijer_g::log_meijer_g(l0_args(1.0, 2.0), 1e-4),
                  std::invalid_argument);
  GArgs bad = l0_args(1.0, 2.0);
  bad.k_widths = 1;
  bad.k_data = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  GArgs neg = l0_args(1.0, 2.0);
  neg.theta_star_norm2 = -1.0;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

TEST_CASE("large shift k stays in domain") {
  const GArgs a = args_of(8, 16, {16, 16}, 2.0, 1.0, 1000000, 0);
  const auto rep = meijer_g::log_meijer_g(a, 1e-10);
  CHECK(std::isfinite(rep.log_value));
}
