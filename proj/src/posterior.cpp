#include "dln/posterior.hpp"

#include <cmath>
#include <stdexcept>

#include "dln/gamma_kernel.hpp"
#include "dln/meijer_g.hpp"
#include "dln/saddle.hpp"

namespace dln::posterior {

namespace {
constexpr double kLog4Pi = 2.5310242469692907930;  // log(4 pi)
}

double log_evidence_exact(const NetworkSpec& spec, const DataSummary& data,
                          double tol) {
  spec.validate();
  data.validate();
  if (!(data.theta_star_norm2 > 0.0))
    throw std::invalid_argument("log_evidence_exact: theta_star_norm2 must be > 0");
  const meijer_g::GArgs args = meijer_g::GArgs::make(spec, data, 0, 0);
  double val = 0.5 * static_cast<double>(data.p) *
               (kLog4Pi - std::log(data.theta_star_norm2));
  for (long w : spec.widths)
    val -= gamma_kernel::log_gamma_real(0.5 * static_cast<double>(w));
  return val + meijer_g::log_meijer_g(args, tol).log_value;
}

double posterior_mean(const Eigen::VectorXd& theta_star,
                      const Eigen::VectorXd& x) {
  if (theta_star.size() != x.size())
    throw std::invalid_argument("posterior_mean: dimension mismatch");
  return theta_star.dot(x);
}

double posterior_variance_exact(const NetworkSpec& spec,
                                const DataSummary& data, double x_perp_norm2,
                                double tol) {
  spec.validate();
  data.validate();
  if (x_perp_norm2 < 0.0)
    throw std::invalid_argument("posterior_variance_exact: x_perp_norm2 must be >= 0");
  if (x_perp_norm2 == 0.0) return 0.0;
  const meijer_g::GArgs args = meijer_g::GArgs::make(spec, data, 0, 0);
  const double log_2m = meijer_g::scale_m(spec) - std::log(2.0);
  const double delta = meijer_g::delta_log_g(args, 1, tol);
  return std::exp(log_2m + std::log(x_perp_norm2) + delta);
}

double variance_factor_exact(const NetworkSpec& spec, const DataSummary& data,
                             double tol) {
  const double var = posterior_variance_exact(spec, data, 1.0, tol);
  return var * static_cast<double>(spec.n0) / data.nu;
}

CharFnSum char_fn_partial_sum(const NetworkSpec& spec, const DataSummary& data,
                              double t_par_inner, double t_perp_norm2,
                              int k_max, double tol) {
  spec.validate();
  data.validate();
  if (k_max < 1) throw std::invalid_argument("char_fn_partial_sum: K must be >= 1");
  const meijer_g::GArgs base = meijer_g::GArgs::make(spec, data, 0, 0);
  const double log_m = meijer_g::scale_m(spec) - std::log(4.0);
  const double log_u = log_m + std::log(t_perp_norm2);  // log(M ||t_perp||^2)
  const bool shallow = spec.widths.empty();
  const double log_g0 =
      shallow ? 0.0 : meijer_g::log_meijer_g(base, 1e-10).log_value;

  double sum = 1.0;  // k = 0 term
  double next_term_mag = 0.0;
  int used = 1;
  for (int k = 1; k <= k_max; ++k) {
    double delta = 0.0;
    if (!shallow) {
      meijer_g::GArgs shifted = base;
      shifted.k_widths = k;
      delta = meijer_g::log_meijer_g(shifted, 1e-10).log_value - log_g0;
    }
    const double log_term = static_cast<double>(k) * log_u -
                            gamma_kernel::log_gamma_real(k + 1.0) + delta;
    const double term = std::exp(log_term);
    next_term_mag = term;
    if (k == k_max) break;  // the K-th term is the reported truncation bound
    sum += (k % 2 == 0) ? term : -term;
    ++used;
    if (term < 1e-14 * std::abs(sum)) {
      next_term_mag = term;
      break;
    }
  }
  if (next_term_mag > tol * std::abs(sum))
    throw std::runtime_error("char_fn_partial_sum: truncation not converged");
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, -t_par_inner));
  CharFnSum out;
  out.value = phase * sum;
  out.truncation_bound = next_term_mag;
  out.terms_used = used;
  return out;
}

double log_evidence_asymptotic(const RegimeParams& params, long p, long n,
                               double theta_star_norm2) {
  if (p < 1 || !(theta_star_norm2 > 0.0))
    throw std::invalid_argument("log_evidence_asymptotic: need P >= 1, ||th*||^2 > 0");
  const double pp = static_cast<double>(p);
  const double lead = 0.5 * pp * (kLog4Pi - std::log(theta_star_norm2));
  switch (params.regime) {
    case Regime::finite_l: {
      params.require(Regime::finite_l);
      const double zs = saddle::solve_z_star(params.nu, params.sigma2,
                                             params.alpha, params.depth_l)
                            .root;
      const double nl = static_cast<double>(n) * static_cast<double>(params.depth_l);
      return lead +
             0.5 * pp * (std::log(pp / 2.0) + std::log1p(zs / params.alpha) -
                         (1.0 + zs / params.alpha)) +
             0.5 * nl * (std::log1p(zs) - zs);
    }
    case Regime::fixed_lambda_prior: {
      params.require(Regime::fixed_lambda_prior);
      const double lam = params.lambda_prior;
      const double m = std::log(params.nu);
      return lead + 0.5 * pp * (std::log(pp / 2.0) - 1.0) -
             0.5 * std::log(pp / 2.0) - (lam + m) * (lam + m) / (4.0 * lam) -
             0.5 * std::log(2.0 * lam);
    }
    case Regime::fixed_lambda_post: {
      params.require(Regime::fixed_lambda_post);
      const double ts = saddle::solve_t_star(params.nu, params.lambda_post).root;
      return lead + 0.5 * pp * (std::log(pp / 2.0) - 1.0) +
             0.5 * pp * (std::log1p(ts) - ts -
                         0.5 * params.lambda_post * ts * ts);
    }
  }
  throw std::invalid_argument("log_evidence_asymptotic: unknown regime");
}

PosteriorSummary predictive_gaussian(const NetworkSpec& spec,
                                     const datagen::Dataset& dataset,
                                     const datagen::Geometry& geom,
                                     const std::vector<Eigen::VectorXd>& test_points,
                                     const RegimeParams& params) {
  spec.validate();
  if (dataset.n0() != spec.n0)
    throw std::invalid_argument("predictive_gaussian: dataset/spec dimension mismatch");
  PosteriorSummary out;
  out.regime = params.regime;
  switch (params.regime) {
    case Regime::finite_l: {
      const double zs = saddle::solve_z_star(params.nu, params.sigma2,
                                             params.alpha, params.depth_l)
                            .root;
      out.variance_factor_c = 1.0 / (1.0 + zs / params.alpha);
      break;
    }
    case Regime::fixed_lambda_prior:
      params.require(Regime::fixed_lambda_prior);
      out.variance_factor_c = 1.0;
      break;
    case Regime::fixed_lambda_post: {
      const double ts = saddle::solve_t_star(params.nu, params.lambda_post).root;
      out.variance_factor_c = 1.0 / (1.0 + ts);
      break;
    }
  }
  out.mean.reserve(test_points.size());
  for (const auto& x : test_points) {
    if (x.size() != dataset.n0())
      throw std::invalid_argument("predictive_gaussian: test point dimension mismatch");
    out.mean.push_back(posterior_mean(geom.theta_star, x));
  }
  const long n = spec.widths.empty() ? spec.n0 : spec.widths.front();
  out.log_evidence =
      log_evidence_asymptotic(params, dataset.p(), n, geom.theta_star_norm2);
  return out;
}

}  // namespace dln::posterior
