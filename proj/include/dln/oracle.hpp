#ifndef DLN_ORACLE_HPP
#define DLN_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "dln/meijer_g.hpp"
#include "dln/types.hpp"

namespace dln::oracle {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

// Unbiased Monte Carlo estimate of Den_{sum log phi_j}(0): sample the width
// factors and average the closed-form density of log phi_0 at the negated
// sum (Rao-Blackwellized on the data factor, so no smoothing bias).
McEstimate rb_density_product_gammas(const meijer_g::GArgs& args, long n,
                                     std::uint64_t seed);

// Samples of Q_{N,L} = || {prod_l W_hat^(l)} u ||^2, unit-variance Gaussian
// weights, drawn layer by layer as v_l = ||v_{l-1}|| g_l.
std::vector<double> prior_q_samples(const std::vector<long>& widths, long n,
                                    std::uint64_t seed);

// Two-sided Kolmogorov-Smirnov p-value of the samples against the CDF induced
// by the product-of-Gammas density of Q (CDF by numeric integration of the
// contour evaluator's density).
double q_density_ks_test(std::vector<double> samples,
                         const std::vector<long>& widths);

// Asymptotic p-value of the Kolmogorov statistic sqrt(n) * D.
double kolmogorov_p_value(double stat, long n);

// Generalization error of the maximal-evidence posterior under the Gaussian
// generative model: 1/a0 - a0 + se2/(1-a0) for a0 < 1, se2/(a0-1) above.
double dd_closed_form(double alpha0, double sigma_eps2);

// Monte Carlo estimate of that error: per trial draw (X, V0, eps), fit the
// interpolant, and average bias^2 plus the posterior variance over fresh
// test points. Grid points within 1e-3 of alpha0 = 1 are rejected.
std::vector<McEstimate> mc_double_descent_error(
    long n0, const std::vector<double>& alpha0_grid, double sigma_eps2,
    long trials, std::uint64_t seed, long fresh_x_per_trial = 8,
    int threads = 1);

}  // namespace dln::oracle

#endif  // DLN_ORACLE_HPP
