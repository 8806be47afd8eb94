#include <doctest.h>

#include <cmath>

#include "dln/meijer_g.hpp"
#include "dln/saddle.hpp"

using namespace dln;

TEST_CASE("solve_z_star closed-form cases") {
  // nu = sigma^{2(L+1)}: both sides equal 1
  auto s = saddle::solve_z_star(8.0, 2.0, 0.7, 2);  // 2^3 = 8
  CHECK(s.root == 0.0);
  CHECK(s.iterations == 0);
  // L = 0: z* = alpha (nu/sigma2 - 1)
  s = saddle::solve_z_star(3.0, 1.0, 1.0, 0);
  CHECK(s.root == doctest::Approx(2.0).epsilon(1e-13));
  // forward substitution (1+1)^2 = 4
  s = saddle::solve_z_star(4.0, 1.0, 1.0, 1);
  CHECK(s.root == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("solve_t_star closed-form cases") {
  CHECK(saddle::solve_t_star(1.0, 3.0).root == 0.0);
  CHECK(saddle::solve_t_star(2.0 * std::exp(1.0), 1.0).root ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(saddle::solve_t_star(5.0, 0.0).root == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("residuals and brackets") {
  for (double lnu = std::log(1e-3); lnu <= std::log(1e3); lnu += 0.61) {
    const double nu = std::exp(lnu);
    for (double lpost : {0.0, 0.5, 5.0, 50.0}) {
      const auto s = saddle::solve_t_star(nu, lpost);
      const double rhs = std::log(nu);
      CHECK(s.residual <= 1e-12 * std::max(1.0, std::abs(rhs)));
      CHECK(s.root > s.bracket.first);
      CHECK(s.root < s.bracket.second);
    }
    const auto z = saddle::solve_z_star(nu, 1.3, 0.8, 3);
    CHECK(z.residual <= 1e-12 * std::max(1.0, std::abs(std::log(nu))));
    CHECK(z.root > z.bracket.first);
    CHECK(z.root < z.bracket.second);
  }
}

TEST_CASE("monotonicity of the roots") {
  double prev_z = -10.0, prev_t = -10.0;
  for (double nu = 0.2; nu <= 40.0; nu *= 1.7) {
    const double z = saddle::solve_z_star(nu, 1.0, 1.0, 2).root;
    const double t = saddle::solve_t_star(nu, 1.0).root;
    CHECK(z > prev_z);
    CHECK(t > prev_t);
    prev_z = z;
    prev_t = t;
  }
  // t*(lambda_post) decreasing for nu > 1, increasing for nu < 1
  double prev = 1e9;
  for (double lp : {0.1, 1.0, 10.0}) {
    const double t = saddle::solve_t_star(3.0, lp).root;
    CHECK(t < prev);
    prev = t;
  }
  prev = -1e9;
  for (double lp : {0.1, 1.0, 10.0}) {
    const double t = saddle::solve_t_star(0.3, lp).root;
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("lambda_post to infinity: t* -> 0 with lambda_post t* -> log nu") {
  const double nu = 7.0;
  const double lp = 1e4;
  const auto s = saddle::solve_t_star(nu, lp);
  CHECK(std::abs(s.root) < 1e-3);
  CHECK(std::abs(lp * s.root - std::log(nu)) < 1e-3);
}

TEST_CASE("solve_zeta closed-form values") {
  NetworkSpec spec;
  spec.n0 = 32;
  spec.widths = {16, 16};
  spec.sigma2 = 1.0;
  // nu = sigma^{2(L+1)} -> zeta* = 0, zeta** = -1/2 at k = 0
  auto [zs0, zss0] = saddle::solve_zeta(spec, DataSummary::from(8, 32, 0.25), 0);
  CHECK(zs0 == 0.0);
  CHECK(zss0 == doctest::Approx(-0.5).epsilon(1e-13));

  // equal widths, P = alpha N: zeta* = z*/2
  NetworkSpec eq;
  eq.n0 = 64;
  eq.widths = {16, 16, 16};
  eq.sigma2 = 1.0;
  const auto data = DataSummary::from(8, 64, 3.0 * 8.0 / 64.0);  // nu = 3
  auto [zs, zss] = saddle::solve_zeta(eq, data, 0);
  (void)zss;
  const double z = saddle::solve_z_star(3.0, 1.0, 0.5, 3).root;
  CHECK(zs == doctest::Approx(0.5 * z).epsilon(1e-12));
}

TEST_CASE("zeta correction matches the located maximum of Re Phi(i.)") {
  // k=1, L=2, N=(16,16), P=8, nu=2: the quadrature's shift c* is the
  // numerically located maximum; c* ~ N zeta* + zeta** up to O(1/N).
  NetworkSpec spec;
  spec.n0 = 32;
  spec.widths = {16, 16};
  spec.sigma2 = 1.0;
  const auto data = DataSummary::from(8, 32, 2.0 * 0.25);
  auto [zs, zss] = saddle::solve_zeta(spec, data, 1);
  const auto args = meijer_g::GArgs::make(spec, data, 1, 0);
  const auto rep = meijer_g::log_meijer_g(args, 1e-10);
  CHECK(std::abs(rep.shift_c - (16.0 * zs + zss)) < 0.05);
}
