#ifndef DLN_POSTERIOR_HPP
#define DLN_POSTERIOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dln/asymptotics.hpp"
#include "dln/datagen.hpp"
#include "dln/types.hpp"

namespace dln::posterior {

using asymptotics::Regime;
using asymptotics::RegimeParams;

struct PosteriorSummary {
  std::vector<double> mean;       // one entry per test point
  double variance_factor_c = 1.0; // Var f(x) = nu * c * ||x_perp||^2 / N0
  double log_evidence = 0.0;
  Regime regime = Regime::finite_l;
};

// log Z_inf(0) = (P/2) log(4pi/||th*||^2) - sum_l logGamma(N_l/2) + log G(k=0).
double log_evidence_exact(const NetworkSpec& spec, const DataSummary& data,
                          double tol = 1e-10);

// Posterior mean of f(x): theta_star^T x.
double posterior_mean(const Eigen::VectorXd& theta_star,
                      const Eigen::VectorXd& x);

// Var f(x) = 2M ||x_perp||^2 exp(Delta(log G)[1]) (width shift).
double posterior_variance_exact(const NetworkSpec& spec,
                                const DataSummary& data, double x_perp_norm2,
                                double tol = 1e-10);

// Var f(x) * N0 / (nu ||x_perp||^2); the quantity the regime theorems pin.
double variance_factor_exact(const NetworkSpec& spec, const DataSummary& data,
                             double tol = 1e-10);

struct CharFnSum {
  std::complex<double> value;
  double truncation_bound = 0.0;  // magnitude of the first omitted term
  int terms_used = 0;
};

// Partial sum of Z_inf(t)/Z_inf(0) = exp(-i <th*, t>) sum_k (-1)^k/k!
// ||t_perp||^{2k} M^k G_k/G_0, truncated at K terms or once a term falls
// below 1e-14 of the running sum. Throws when the bound at K exceeds tol.
CharFnSum char_fn_partial_sum(const NetworkSpec& spec, const DataSummary& data,
                              double t_par_inner, double t_perp_norm2, int k_max,
                              double tol = 1e-3);

// Evidence expansions of the three regime theorems. Regime b includes the
// O(1) depth-selection block (the lambda_prior argmax lives there); regime c
// is the bare display, whose lambda_post derivative is exactly P t*^2 / 4.
double log_evidence_asymptotic(const RegimeParams& params, long p, long n,
                               double theta_star_norm2);

// Gaussian predictive summary N(mu*, nu c Sigma_perp-normalized); c by regime:
// (1+z*/alpha)^{-1}, 1, (1+t*)^{-1}.
PosteriorSummary predictive_gaussian(const NetworkSpec& spec,
                                     const datagen::Dataset& dataset,
                                     const datagen::Geometry& geom,
                                     const std::vector<Eigen::VectorXd>& test_points,
                                     const RegimeParams& params);

}  // namespace dln::posterior

#endif  // DLN_POSTERIOR_HPP
