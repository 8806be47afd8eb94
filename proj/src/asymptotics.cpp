#include "dln/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "dln/saddle.hpp"

namespace dln::asymptotics {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

void RegimeParams::require(Regime r) const {
  if (regime != r) throw std::invalid_argument("RegimeParams: wrong regime for this expansion");
  if (!(nu > 0.0)) throw std::invalid_argument("RegimeParams: nu must be > 0");
  switch (r) {
    case Regime::finite_l:
      if (!(alpha > 0.0) || !(sigma2 > 0.0) || depth_l < 0)
        throw std::invalid_argument("RegimeParams: finite_l needs alpha, sigma2 > 0, L >= 0");
      break;
    case Regime::fixed_lambda_prior:
      if (!(lambda_prior > 0.0))
        throw std::invalid_argument("RegimeParams: fixed_lambda_prior needs lambda_prior > 0");
      if (sigma2 != 1.0)
        throw std::invalid_argument("RegimeParams: fixed_lambda_prior requires sigma2 = 1");
      break;
    case Regime::fixed_lambda_post:
      if (!(lambda_post >= 0.0))
        throw std::invalid_argument("RegimeParams: fixed_lambda_post needs lambda_post >= 0");
      if (sigma2 != 1.0)
        throw std::invalid_argument("RegimeParams: fixed_lambda_post requires sigma2 = 1");
      break;
  }
}

double log_g_case_a(long n, const RegimeParams& params) {
  params.require(Regime::finite_l);
  if (n < 2) throw std::invalid_argument("log_g_case_a: N must be >= 2");
  const double nn = static_cast<double>(n);
  const double l = static_cast<double>(params.depth_l);
  const double a = params.alpha;
  const double zs =
      saddle::solve_z_star(params.nu, params.sigma2, a, params.depth_l).root;
  const double kk = static_cast<double>(params.k);
  double val = (nn * a / 2.0) * (std::log(nn * a / 2.0) + std::log1p(zs / a) -
                                 (1.0 + zs / a)) +
               (nn * l / 2.0) * (std::log(nn / 2.0) + std::log1p(zs) - (1.0 + zs));
  val += (l * (2.0 * kk - 1.0) / 2.0) * (std::log(nn / 2.0) + std::log1p(zs));
  val += (l / 2.0) * kLog2Pi - 0.5 * std::log1p(l * (a + zs) / (1.0 + zs));
  return val;
}

double delta_log_g_case_a(long n, const RegimeParams& params, long k) {
  params.require(Regime::finite_l);
  if (k < 0) throw std::invalid_argument("delta_log_g_case_a: k >= 0 required");
  const double zs = saddle::solve_z_star(params.nu, params.sigma2, params.alpha,
                                         params.depth_l)
                        .root;
  return static_cast<double>(k) * static_cast<double>(params.depth_l) *
         (std::log(static_cast<double>(n) / 2.0) + std::log1p(zs));
}

double log_g_case_b(const std::vector<long>& widths, long p,
                    const RegimeParams& params) {
  params.require(Regime::fixed_lambda_prior);
  if (widths.empty() || p < 1)
    throw std::invalid_argument("log_g_case_b: widths nonempty, P >= 1");
  const double m = std::log(params.nu);
  const double kk = static_cast<double>(params.k);
  double lam = 0.0, bulk = 0.0, logw = 0.0;
  for (long w : widths) {
    const double x = static_cast<double>(w) / 2.0;
    lam += 0.5 / x;
    bulk += x * (std::log(x) - 1.0);
    logw += std::log(x);
  }
  const double pp = static_cast<double>(p);
  const double ld = static_cast<double>(widths.size());
  return bulk + (pp / 2.0) * (std::log(pp / 2.0) - 1.0) + (ld / 2.0) * kLog2Pi +
         (kk - 0.5) * logw - 0.5 * std::log(pp / 2.0) + (kk - 0.5) * m -
         lam / 12.0 - m * m / (4.0 * lam) - 0.5 * std::log(2.0 * lam);
}

double delta_log_g_case_b(const std::vector<long>& widths, long p,
                          const RegimeParams& params, long k) {
  params.require(Regime::fixed_lambda_prior);
  (void)p;
  if (k < 0) throw std::invalid_argument("delta_log_g_case_b: k >= 0 required");
  double logw = 0.0;
  for (long w : widths) logw += std::log(static_cast<double>(w) / 2.0);
  return static_cast<double>(k) * (logw + std::log(params.nu));
}

double log_g_case_c(long n, long p, long l, const RegimeParams& params) {
  params.require(Regime::fixed_lambda_post);
  if (n < 2 || p < 1 || l < 1)
    throw std::invalid_argument("log_g_case_c: need N >= 2, P >= 1, L >= 1");
  const double nn = static_cast<double>(n);
  const double pp = static_cast<double>(p);
  const double ld = static_cast<double>(l);
  const double lpost = params.lambda_post;
  const double ts = saddle::solve_t_star(params.nu, lpost).root;
  const double kk = static_cast<double>(params.k);
  const double x = nn / 2.0;
  return (pp / 2.0) * (std::log(pp / 2.0) - 1.0 + std::log1p(ts) -
                       ts * (1.0 + lpost * ts / 2.0)) -
         std::log(params.nu) + (ld / 2.0) * kLog2Pi +
         ld * (x * (std::log(x) - 1.0) + (kk - 0.5) * std::log(x)) -
         0.5 * std::log(lpost + 1.0 / (1.0 + ts)) +
         0.5 * ((2.0 * kk + 1.0) * lpost * ts + std::log1p(ts));
}

double delta_log_g_case_c(long n, long p, long l, const RegimeParams& params,
                          long k) {
  params.require(Regime::fixed_lambda_post);
  (void)p;
  if (k < 0) throw std::invalid_argument("delta_log_g_case_c: k >= 0 required");
  const double ts = saddle::solve_t_star(params.nu, params.lambda_post).root;
  return static_cast<double>(k) *
         (static_cast<double>(l) * std::log(static_cast<double>(n) / 2.0) +
          params.lambda_post * ts);
}

double variance_scaling_constant(const RegimeParams& params) {
  if (!(params.lambda_prior > 0.0) || !(params.alpha > 0.0))
    throw std::invalid_argument("variance_scaling_constant: lambda_prior and alpha must be > 0");
  if (params.sigma2 != 1.0)
    throw std::invalid_argument("variance_scaling_constant: requires sigma2 = 1");
  return (1.0 - std::log(params.nu) / params.lambda_prior) / params.alpha;
}

}  // namespace dln::asymptotics
