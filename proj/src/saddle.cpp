#include "dln/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dln::saddle {

namespace {

// Safeguarded solve of an increasing function on the open interval
// (lo_open, +inf): bisection down to width 1e-3, then Newton with bisection
// fallback on overshoot. The initial bracket always straddles the root.
template <class F, class DF>
SaddleSolution solve_monotone(F f, DF df, double lo_open) {
  SaddleSolution sol;
  int it = 0;
  double a, b;
  if (f(0.0) < 0.0) {
    a = 0.0;
    b = 1.0;
    while (f(b) < 0.0) {
      a = b;
      b = b * 2.0 + 1.0;
      ++it;
    }
  } else {
    b = 0.0;
    double d = 0.5 * (0.0 - lo_open);
    a = lo_open + d;
    while (f(a) >= 0.0) {
      b = a;
      d *= 0.25;
      a = lo_open + d;
      ++it;
      if (d < 1e-280)
        throw std::invalid_argument("saddle: no root inside the domain");
    }
  }
  sol.bracket = {a, b};
  while (b - a > 1e-3) {
    const double mid = 0.5 * (a + b);
    (f(mid) < 0.0 ? a : b) = mid;
    ++it;
  }
  double x = 0.5 * (a + b);
  for (int n = 0; n < 100; ++n) {
    const double fx = f(x);
    (fx < 0.0 ? a : b) = x;
    double next = x - fx / df(x);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    ++it;
    if (std::abs(next - x) <= 4e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  sol.root = x;
  sol.residual = std::abs(f(x));
  sol.iterations = it;
  return sol;
}

SaddleSolution exact_zero() {
  SaddleSolution sol;
  sol.bracket = {-1e-300, 1e-300};
  return sol;
}

}  // namespace

SaddleSolution solve_z_star(double nu, double sigma2, double alpha, long l) {
  if (!(nu > 0.0) || !(sigma2 > 0.0) || !(alpha > 0.0) || l < 0)
    throw std::invalid_argument("solve_z_star: inputs must be positive, L >= 0");
  const double rhs = std::log(nu) - static_cast<double>(l + 1) * std::log(sigma2);
  if (rhs == 0.0) return exact_zero();
  const double ld = static_cast<double>(l);
  const auto f = [&](double z) {
    return std::log1p(z / alpha) + ld * std::log1p(z) - rhs;
  };
  const auto df = [&](double z) { return 1.0 / (alpha + z) + ld / (1.0 + z); };
  return solve_monotone(f, df, std::max(-1.0, -alpha));
}

SaddleSolution solve_t_star(double nu, double lambda_post) {
  if (!(nu > 0.0) || lambda_post < 0.0)
    throw std::invalid_argument("solve_t_star: nu > 0 and lambda_post >= 0 required");
  const double rhs = std::log(nu);
  if (rhs == 0.0) return exact_zero();
  const auto f = [&](double t) { return std::log1p(t) + lambda_post * t - rhs; };
  const auto df = [&](double t) { return 1.0 / (1.0 + t) + lambda_post; };
  return solve_monotone(f, df, -1.0);
}

std::pair<double, double> solve_zeta(const NetworkSpec& spec,
                                     const DataSummary& data, long k) {
  spec.validate();
  data.validate();
  if (k < 0) throw std::invalid_argument("solve_zeta: k must be >= 0");
  const long l = spec.depth();
  const double p = static_cast<double>(data.p);
  const double n_scale =
      (l > 0) ? static_cast<double>(
                    *std::min_element(spec.widths.begin(), spec.widths.end()))
              : p;
  const double rhs =
      std::log(data.nu) - static_cast<double>(l + 1) * std::log(spec.sigma2);

  double zeta_star = 0.0;
  if (rhs != 0.0) {
    const auto f = [&](double z) {
      double acc = std::log1p(2.0 * n_scale * z / p) - rhs;
      for (long w : spec.widths)
        acc += std::log1p(2.0 * n_scale * z / static_cast<double>(w));
      return acc;
    };
    const auto df = [&](double z) {
      double acc = 2.0 * n_scale / (p + 2.0 * n_scale * z);
      for (long w : spec.widths)
        acc += 2.0 * n_scale / (static_cast<double>(w) + 2.0 * n_scale * z);
      return acc;
    };
    double min_dim = p;
    for (long w : spec.widths) min_dim = std::min(min_dim, static_cast<double>(w));
    zeta_star = solve_monotone(f, df, -min_dim / (2.0 * n_scale)).root;
  }

  const double inv_p = 1.0 / (2.0 * zeta_star + p / n_scale);
  double sum_w = 0.0;
  for (long w : spec.widths)
    sum_w += 1.0 / (2.0 * zeta_star + static_cast<double>(w) / n_scale);
  const double kk = static_cast<double>(k);
  const double zeta_star2 =
      -0.5 * (inv_p + (1.0 + 2.0 * kk) * sum_w) / (inv_p + sum_w);
  return {zeta_star, zeta_star2};
}

}  // namespace dln::saddle
