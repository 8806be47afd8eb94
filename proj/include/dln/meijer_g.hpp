#ifndef DLN_MEIJER_G_HPP
#define DLN_MEIJER_G_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include "dln/types.hpp"

namespace dln::meijer_g {

// One Meijer-G instance G^{L+1,0}_{0,L+1}(z; -; P/2 + k_data, N/2 + k_widths)
// with z = theta_star_norm2 / (4M). At most one of the two shift patterns may
// be active per instance.
struct GArgs {
  double theta_star_norm2 = 1.0;
  double alpha0 = 1.0;  // P / N0, in (0, 1]
  NetworkSpec spec;
  long k_widths = 0;
  long k_data = 0;

  long p() const { return std::lround(alpha0 * static_cast<double>(spec.n0)); }
  double nu() const { return theta_star_norm2 / alpha0; }

  static GArgs make(const NetworkSpec& spec, const DataSummary& data,
                    long k_widths = 0, long k_data = 0);
  void validate() const;
};

struct QuadratureReport {
  double log_value = 0.0;      // log of the target G-function
  double imag_residual = 0.0;  // |accumulated Im| / |Re|
  int panels = 0;
  double truncation_t = 0.0;   // half-width of the truncated contour
  double shift_c = 0.0;        // vertical offset of the integration line
};

struct QuadratureConfig {
  double tol = 1e-10;       // relative tolerance on exp(log_value)
  int max_panels = 20000;
  double shift_scale = 1.0; // multiplies the saddle offset c (testing hook)
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Product of independent Gamma(shape_j, scale_j) variables, in log-scale form.
struct GammaProduct {
  std::vector<double> shapes;
  std::vector<double> log_scales;
};

// Factors phi_j of Lemma-style characteristic-function products: the data
// factor has shape P/2 + k_data + 1 and scale (2 sigma^2/P)(alpha0/||th*||^2);
// width factor l has shape N_l/2 + k_widths + 1 and scale 2 sigma^2/N_l.
GammaProduct gamma_product(const GArgs& args);

// log(4M) = sum_{l=0..L} [log(2 sigma^2) - log N_l].
double scale_m(const NetworkSpec& spec);

// Phi(t) = sum_j [ -i t log(scale_j) + logGamma(shape_j - i t) - logGamma(shape_j) ].
std::complex<double> phi_integrand(double t, const GArgs& args);

// log Den_{prod phi_j}(y) by contour quadrature along Im = c* (the saddle).
QuadratureReport log_density_at(const GammaProduct& gp, double y,
                                const QuadratureConfig& cfg = {});

// log G recovered from Den_{sum log phi}(0) via
//   log G = log Den + sum_j logGamma(shape_j) + sum_j log(scale_j).
QuadratureReport log_meijer_g(const GArgs& args, double tol);
QuadratureReport log_meijer_g(const GArgs& args, const QuadratureConfig& cfg);

// Delta(log G)[k] with the width-shift pattern of Theorem-logG type, both
// sides sharing the quadrature configuration. k_data analogue below.
double delta_log_g(const GArgs& args, long k, double tol = 1e-10);
double delta_log_g_data(const GArgs& args, long k, double tol = 1e-10);

}  // namespace dln::meijer_g

#endif  // DLN_MEIJER_G_HPP
