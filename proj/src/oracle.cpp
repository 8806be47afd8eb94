#include "dln/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dln/datagen.hpp"
#include "dln/gamma_kernel.hpp"
#include "dln/parallel.hpp"
#include "dln/rng.hpp"

namespace dln::oracle {

namespace {

// Welford accumulator in fixed iteration order.
struct MeanVar {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double std_error() const {
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

McEstimate rb_density_product_gammas(const meijer_g::GArgs& args, long n,
                                     std::uint64_t seed) {
  args.validate();
  if (n < 1000)
    throw std::invalid_argument("rb_density_product_gammas: n must be >= 1e3");
  const meijer_g::GammaProduct gp = meijer_g::gamma_product(args);
  const double shape0 = gp.shapes[0];
  const double log_scale0 = gp.log_scales[0];
  const double log_norm =
      gamma_kernel::log_gamma_real(shape0) + shape0 * log_scale0;

  const std::size_t nw = gp.shapes.size() - 1;
  MeanVar acc;
  rng::Philox base(seed);
  for (long i = 0; i < n; ++i) {
    rng::Philox g = base.stream(static_cast<std::uint64_t>(i));
    double neg_sum_log = 0.0;
    for (std::size_t j = 0; j < nw; ++j) {
      const double x = g.next_gamma(gp.shapes[j + 1]);
      neg_sum_log -= std::log(x) + gp.log_scales[j + 1];
    }
    // density of log phi_0 at u: exp(shape*u - e^u/scale - logGamma - shape*log scale)
    const double ld = shape0 * neg_sum_log -
                      std::exp(neg_sum_log - log_scale0) - log_norm;
    acc.add(std::exp(ld));
  }
  McEstimate est;
  est.value = acc.mean;
  est.std_error = acc.std_error();
  est.n_samples = n;
  est.seed = seed;
  return est;
}

std::vector<double> prior_q_samples(const std::vector<long>& widths, long n,
                                    std::uint64_t seed) {
  if (widths.empty())
    throw std::invalid_argument("prior_q_samples: widths must be nonempty");
  if (n < 10000)
    throw std::invalid_argument("prior_q_samples: n must be >= 1e4");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  rng::Philox base(seed);
  for (long i = 0; i < n; ++i) {
    rng::Philox g = base.stream(static_cast<std::uint64_t>(i));
    double q = 1.0;  // ||v_0||^2 with v_0 = u a unit vector
    for (long w : widths) {
      double s = 0.0;
      for (long j = 0; j < w; ++j) {
        const double z = g.next_normal();
        s += z * z;
      }
      q *= s;
    }
    out.push_back(q);
  }
  return out;
}

double kolmogorov_p_value(double stat, long n) {
  const double lambda = (std::sqrt(static_cast<double>(n)) + 0.12 +
                         0.11 / std::sqrt(static_cast<double>(n))) *
                        stat;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double q_density_ks_test(std::vector<double> samples,
                         const std::vector<long>& widths) {
  if (samples.empty() || widths.empty())
    throw std::invalid_argument("q_density_ks_test: empty input");
  // Q = prod chi^2_{N_l} = prod Gamma(N_l/2, 2).
  meijer_g::GammaProduct gp;
  for (long w : widths) {
    gp.shapes.push_back(0.5 * static_cast<double>(w));
    gp.log_scales.push_back(std::log(2.0));
  }
  std::sort(samples.begin(), samples.end());
  const double lo = std::max(samples.front() * 0.5, 1e-12);
  const double hi = samples.back() * 2.0;

  // CDF on a log grid by trapezoid integration of the evaluator's density.
  const int grid_n = 4001;
  std::vector<double> ys(grid_n), cdf(grid_n);
  const double llo = std::log(lo), lhi = std::log(hi);
  meijer_g::QuadratureConfig cfg;
  cfg.tol = 1e-9;
  std::vector<double> dens(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    ys[i] = std::exp(llo + (lhi - llo) * i / (grid_n - 1));
    dens[i] = std::exp(meijer_g::log_density_at(gp, ys[i], cfg).log_value);
  }
  cdf[0] = 0.0;  // mass below lo is negligible for the spans used here
  for (int i = 1; i < grid_n; ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (dens[i] + dens[i - 1]) * (ys[i] - ys[i - 1]);
  for (int i = 0; i < grid_n; ++i) cdf[i] = std::min(cdf[i], 1.0);

  const auto cdf_at = [&](double v) {
    if (v <= ys.front()) return 0.0;
    if (v >= ys.back()) return cdf.back();
    const auto it = std::upper_bound(ys.begin(), ys.end(), v);
    const std::size_t i = static_cast<std::size_t>(it - ys.begin());
    const double t = (v - ys[i - 1]) / (ys[i] - ys[i - 1]);
    return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
  };

  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf_at(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return kolmogorov_p_value(d, static_cast<long>(samples.size()));
}

double dd_closed_form(double alpha0, double sigma_eps2) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("dd_closed_form: alpha0 > 0 required");
  if (alpha0 < 1.0)
    return 1.0 / alpha0 - alpha0 + sigma_eps2 / (1.0 - alpha0);
  return sigma_eps2 / (alpha0 - 1.0);
}

std::vector<McEstimate> mc_double_descent_error(
    long n0, const std::vector<double>& alpha0_grid, double sigma_eps2,
    long trials, std::uint64_t seed, long fresh_x_per_trial, int threads) {
  if (trials < 100)
    throw std::invalid_argument("mc_double_descent_error: trials must be >= 100");
  if (fresh_x_per_trial < 1)
    throw std::invalid_argument("mc_double_descent_error: fresh_x_per_trial >= 1");
  for (double a0 : alpha0_grid)
    if (std::abs(a0 - 1.0) < 1e-3)
      throw std::invalid_argument(
          "mc_double_descent_error: singular-alpha0 grid point near 1");

  std::vector<McEstimate> out;
  out.reserve(alpha0_grid.size());
  std::uint64_t grid_index = 0;
  for (double a0 : alpha0_grid) {
    const long p = std::lround(a0 * static_cast<double>(n0));
    const double a0_actual = static_cast<double>(p) / static_cast<double>(n0);
    // Per-trial errors are filled in parallel and reduced in trial order, so
    // the estimate does not depend on the thread count.
    std::vector<double> errs(static_cast<std::size_t>(trials));
    parallel::for_each_index(trials, threads, [&](long t) {
      const std::uint64_t trial_seed =
          seed + 0x100000000ull * grid_index + static_cast<std::uint64_t>(t) + 1;
      const datagen::Generated gen =
          datagen::generate_full(n0, p, std::sqrt(sigma_eps2), trial_seed);
      const datagen::Geometry geom = datagen::min_norm_interpolant(gen.data);
      const Eigen::VectorXd diff = geom.theta_star - gen.v0;

      double var_scale = 0.0;  // posterior variance per unit ||x_perp||^2/N0
      Eigen::MatrixXd q;
      if (a0_actual < 1.0) {
        // Maximal-evidence posterior scale, anchored on the unit signal plus
        // the fitted-noise component (the quantity the closed form expands).
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(gen.data.x);
        q = qr.householderQ() * Eigen::MatrixXd::Identity(n0, p);
        const Eigen::VectorXd noise_fit =
            geom.theta_star - q * (q.transpose() * gen.v0);
        var_scale = (1.0 + noise_fit.squaredNorm()) / a0_actual;
      }

      rng::Philox gx(trial_seed, 7);
      double err = 0.0;
      for (long j = 0; j < fresh_x_per_trial; ++j) {
        Eigen::VectorXd x(n0);
        for (long i = 0; i < n0; ++i) x(i) = gx.next_normal();
        const double bias = diff.dot(x);
        double e = bias * bias;
        if (a0_actual < 1.0) {
          const Eigen::VectorXd proj = q.transpose() * x;
          const double x_perp2 = x.squaredNorm() - proj.squaredNorm();
          e += var_scale * x_perp2 / static_cast<double>(n0);
        }
        err += e;
      }
      errs[static_cast<std::size_t>(t)] = err / static_cast<double>(fresh_x_per_trial);
    });
    MeanVar acc;
    for (double e : errs) acc.add(e);
    McEstimate est;
    est.value = acc.mean;
    est.std_error = acc.std_error();
    est.n_samples = trials;
    est.seed = seed;
    out.push_back(est);
    ++grid_index;
  }
  return out;
}

}  // namespace dln::oracle
