#ifndef DLN_ASYMPTOTICS_HPP
#define DLN_ASYMPTOTICS_HPP

#include <vector>

#include "dln/types.hpp"

namespace dln::asymptotics {

enum class Regime { finite_l, fixed_lambda_prior, fixed_lambda_post };

// Parameters of the three large-size regimes. Regimes b and c require
// sigma2 == 1; depth_l carries the finite depth for regime a.
struct RegimeParams {
  Regime regime = Regime::finite_l;
  double alpha = 1.0;         // P/N (regime a and the scaling law)
  double lambda_prior = 0.0;  // L/N (regime b)
  double lambda_post = 0.0;   // LP/N (regime c)
  double nu = 1.0;
  double sigma2 = 1.0;
  long k = 0;
  long depth_l = 0;           // L (regime a)

  void require(Regime r) const;
};

// Regime a: L fixed, P = alpha N, N -> inf. Leading terms plus the O(1) block
// (L(2k-1)/2)[log(N/2)+log(1+z*)] + (L/2)log 2pi - (1/2)log(1+L(alpha+z*)/(1+z*)).
double log_g_case_a(long n, const RegimeParams& params);
double delta_log_g_case_a(long n, const RegimeParams& params, long k);

// Regime b: L = lambda_prior N, sigma2 = 1, general width vector.
double log_g_case_b(const std::vector<long>& widths, long p,
                    const RegimeParams& params);
double delta_log_g_case_b(const std::vector<long>& widths, long p,
                          const RegimeParams& params, long k);

// Regime c: P/N -> 0, L/N -> 0, LP/N -> lambda_post, sigma2 = 1.
double log_g_case_c(long n, long p, long l, const RegimeParams& params);
double delta_log_g_case_c(long n, long p, long l, const RegimeParams& params,
                          long k);

// Coefficient C of the variance-limited scaling law
//   Var_N = Var_inf + C/N * nu ||x_perp||^2 / N0,  C = (1 - log(nu)/lambda_prior)/alpha,
// for L = lambda_prior N, P = alpha N, sigma2 = 1.
double variance_scaling_constant(const RegimeParams& params);

}  // namespace dln::asymptotics

#endif  // DLN_ASYMPTOTICS_HPP
