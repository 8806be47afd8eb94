#include "dln/model_select.hpp"

#include <cmath>
#include <stdexcept>

#include "dln/saddle.hpp"

namespace dln::model_select {

double sigma_star(double nu, long l) {
  if (!(nu > 0.0) || l < 0)
    throw std::invalid_argument("sigma_star: nu > 0 and L >= 0 required");
  return std::pow(nu, 1.0 / static_cast<double>(l + 1));
}

double l_star(double nu, double sigma2) {
  if (!(nu > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("l_star: nu and sigma2 must be > 0");
  if (sigma2 == 1.0)
    throw std::invalid_argument("l_star: undefined at sigma2 = 1 (depth runs off to infinity)");
  return std::log(nu) / std::log(sigma2) - 1.0;
}

double lambda_prior_star(double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("lambda_prior_star: nu must be > 0");
  const double m = std::log(nu);
  return std::sqrt(1.0 + m * m) - 1.0;
}

double evidence_gap_finite_depth(long l, double alpha, double nu, double sigma2) {
  const double zs = saddle::solve_z_star(nu, sigma2, alpha, l).root;
  const double ld = static_cast<double>(l);
  return 0.5 * alpha * (std::log1p(zs / alpha) - zs / alpha) +
         0.5 * ld * (std::log1p(zs) - zs);
}

double d_log_evidence_d_lambda_post(long p, double nu, double lambda_post) {
  if (p < 1) throw std::invalid_argument("d_log_evidence_d_lambda_post: P >= 1 required");
  const double ts = saddle::solve_t_star(nu, lambda_post).root;
  return static_cast<double>(p) * ts * ts / 4.0;
}

}  // namespace dln::model_select
