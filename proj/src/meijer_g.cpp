#include "dln/meijer_g.hpp"

#include <algorithm>
#include <cmath>

#include "dln/gamma_kernel.hpp"

namespace dln::meijer_g {

namespace {

using gamma_kernel::digamma_real;
using gamma_kernel::log_gamma;
using gamma_kernel::log_gamma_real;

constexpr double kLn10 = 2.302585092994046;
// Stop extending the contour once Re Phi has dropped this far below the peak;
// the integrand decays at least linearly in |t| beyond the Gamma transition.
constexpr double kTruncDropLog10 = 46.0;

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Fixed factor set with precomputed constants; evaluates
//   f(t) = Phi(t + i c) - peak  (complex)
struct Integrand {
  std::vector<double> shapes;
  std::vector<double> log_scales;
  std::vector<double> log_gamma_shape;  // logGamma(shape_j), real
  double c = 0.0;
  double peak = 0.0;

  std::complex<double> phi_off(double t) const {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < shapes.size(); ++j) {
      const std::complex<double> arg(shapes[j] + c, -t);
      acc += log_gamma(arg) - log_gamma_shape[j];
      acc += std::complex<double>(c, -t) * log_scales[j];  // -i(t+ic)*log th
    }
    return acc - peak;
  }

  std::complex<double> value(double t) const { return std::exp(phi_off(t)); }

  double re_drop(double t) const { return phi_off(t).real(); }
};

struct Panel {
  double a, b;
  std::complex<double> integral;
  double error;
};

Panel gk15(const Integrand& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::complex<double> kron = kWgk[7] * f.value(mid);
  std::complex<double> gauss = kWg[3] * f.value(mid);
  for (int i = 0; i < 7; ++i) {
    const std::complex<double> lo = f.value(mid - h * kXgk[i]);
    const std::complex<double> hi = f.value(mid + h * kXgk[i]);
    kron += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

// Global worst-first refinement. The final reduction re-sums the leaves in
// left-to-right order, so the result is bitwise independent of the splitting
// history's transient arithmetic.
struct QuadratureScheme {
  std::vector<Panel> leaves;
  double err_sum = 0.0;
  std::complex<double> sum = 0.0;

  void push(Panel p) {
    err_sum += p.error;
    sum += p.integral;
    leaves.push_back(p);
  }

  void refine(const Integrand& f, double tol_rel, int max_panels) {
    for (;;) {
      const double target =
          tol_rel * std::max(std::abs(sum.real()), 1e-300);
      if (err_sum <= target) break;
      if (static_cast<int>(leaves.size()) >= max_panels)
        throw QuadratureError(
            "log_density_at: panel budget exhausted before tolerance");
      std::size_t worst = 0;
      for (std::size_t i = 1; i < leaves.size(); ++i)
        if (leaves[i].error > leaves[worst].error ||
            (leaves[i].error == leaves[worst].error &&
             leaves[i].a < leaves[worst].a))
          worst = i;
      const Panel old = leaves[worst];
      const double mid = 0.5 * (old.a + old.b);
      if (mid <= old.a || mid >= old.b)
        throw QuadratureError("log_density_at: panel underflow before tolerance");
      const Panel left = gk15(f, old.a, mid);
      const Panel right = gk15(f, mid, old.b);
      err_sum += left.error + right.error - old.error;
      sum += left.integral + right.integral - old.integral;
      leaves[worst] = left;
      leaves.push_back(right);
    }
  }

  std::complex<double> ordered_total() {
    std::sort(leaves.begin(), leaves.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::complex<double> acc = 0.0;
    for (const Panel& p : leaves) acc += p.integral;
    return acc;
  }
};

// Saddle offset: unique root of S(c) = sum_j [log th_j + psi(shape_j + c)]
// on (-min shape_j, inf); S is increasing from -inf to +inf.
double find_shift(const GammaProduct& gp) {
  double min_shape = gp.shapes[0];
  for (double s : gp.shapes) min_shape = std::min(min_shape, s);
  const auto S = [&](double c) {
    double acc = 0.0;
    for (std::size_t j = 0; j < gp.shapes.size(); ++j)
      acc += gp.log_scales[j] + digamma_real(gp.shapes[j] + c);
    return acc;
  };
  double lo = -min_shape + 1e-13 * std::max(1.0, min_shape);
  double hi = 1.0;
  while (S(hi) < 0.0) hi = hi * 2.0 + 1.0;
  if (S(lo) > 0.0) return lo;  // degenerate: saddle pinned at the strip edge
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (S(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GArgs GArgs::make(const NetworkSpec& spec, const DataSummary& data,
                  long k_widths, long k_data) {
  GArgs a;
  a.theta_star_norm2 = data.theta_star_norm2;
  a.alpha0 = data.alpha0;
  a.spec = spec;
  a.k_widths = k_widths;
  a.k_data = k_data;
  a.validate();
  return a;
}

void GArgs::validate() const {
  spec.validate();
  if (!(theta_star_norm2 > 0.0))
    throw std::invalid_argument("GArgs: theta_star_norm2 must be > 0");
  if (!(alpha0 > 0.0) || alpha0 > 1.0)
    throw std::invalid_argument("GArgs: alpha0 must be in (0, 1]");
  if (p() < 1) throw std::invalid_argument("GArgs: P must be >= 1");
  if (k_widths < 0 || k_data < 0)
    throw std::invalid_argument("GArgs: shifts must be >= 0");
  if (k_widths != 0 && k_data != 0)
    throw std::invalid_argument("GArgs: at most one shift pattern may be active");
}

GammaProduct gamma_product(const GArgs& args) {
  GammaProduct gp;
  const double p = static_cast<double>(args.p());
  gp.shapes.push_back(0.5 * p + static_cast<double>(args.k_data) + 1.0);
  gp.log_scales.push_back(std::log(2.0 * args.spec.sigma2 / p) - std::log(args.nu()));
  for (long w : args.spec.widths) {
    gp.shapes.push_back(0.5 * static_cast<double>(w) +
                        static_cast<double>(args.k_widths) + 1.0);
    gp.log_scales.push_back(std::log(2.0 * args.spec.sigma2 / static_cast<double>(w)));
  }
  return gp;
}

double scale_m(const NetworkSpec& spec) {
  spec.validate();
  double acc = std::log(2.0 * spec.sigma2) - std::log(static_cast<double>(spec.n0));
  for (long w : spec.widths)
    acc += std::log(2.0 * spec.sigma2) - std::log(static_cast<double>(w));
  return acc;
}

std::complex<double> phi_integrand(double t, const GArgs& args) {
  args.validate();
  const GammaProduct gp = gamma_product(args);
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < gp.shapes.size(); ++j) {
    const std::complex<double> arg(gp.shapes[j], -t);
    acc += std::complex<double>(0.0, -t) * gp.log_scales[j];
    acc += log_gamma(arg) - log_gamma_real(gp.shapes[j]);
  }
  return acc;
}

QuadratureReport log_density_at(const GammaProduct& gp, double y,
                                const QuadratureConfig& cfg) {
  if (!(y > 0.0)) throw std::invalid_argument("log_density_at: y must be > 0");
  if (!(cfg.tol >= 1e-12 && cfg.tol <= 1e-6))
    throw std::invalid_argument("log_density_at: tol must lie in [1e-12, 1e-6]");

  // Den_{prod phi}(y) = Den_{prod phi'}(1)/y with the first scale divided by y.
  GammaProduct g = gp;
  g.log_scales[0] -= std::log(y);

  Integrand f;
  f.shapes = g.shapes;
  f.log_scales = g.log_scales;
  f.log_gamma_shape.reserve(g.shapes.size());
  for (double s : g.shapes) f.log_gamma_shape.push_back(log_gamma_real(s));
  f.c = cfg.shift_scale * find_shift(g);

  // Peak value Phi(ic); real by construction.
  f.peak = 0.0;
  for (std::size_t j = 0; j < g.shapes.size(); ++j)
    f.peak += f.c * g.log_scales[j] + log_gamma_real(g.shapes[j] + f.c) -
              f.log_gamma_shape[j];

  // Curvature-based width from a central difference of the saddle function.
  double curv = 0.0;
  {
    const double h = 1e-4 * std::max(1.0, std::abs(f.c));
    double sp = 0.0, sm = 0.0;
    for (std::size_t j = 0; j < g.shapes.size(); ++j) {
      sp += digamma_real(g.shapes[j] + f.c + h);
      sm += digamma_real(g.shapes[j] + f.c - h);
    }
    curv = (sp - sm) / (2.0 * h);
  }
  const double width = 1.0 / std::sqrt(std::max(curv, 1e-300));

  // Truncation: extend until Re Phi drops 46 decades below the peak.
  const double drop = -kTruncDropLog10 * kLn10;
  double t_max = 8.0 * width;
  while (f.re_drop(t_max) > drop) {
    t_max *= 1.5;
    if (!(t_max < 1e18))
      throw QuadratureError("log_density_at: integrand fails to decay");
  }

  // Geometric panel edges out from the peak, both directions.
  std::vector<double> edges{0.0};
  for (double e = width; e < t_max; e *= 2.0) edges.push_back(e);
  edges.push_back(t_max);

  QuadratureScheme scheme;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    scheme.push(gk15(f, edges[i], edges[i + 1]));
    scheme.push(gk15(f, -edges[i + 1], -edges[i]));
  }
  scheme.refine(f, 0.25 * cfg.tol, cfg.max_panels);
  const std::complex<double> total = scheme.ordered_total();

  if (!(total.real() > 0.0))
    throw QuadratureError("log_density_at: non-positive integral");

  QuadratureReport rep;
  rep.log_value = f.peak + std::log(total.real() / (2.0 * M_PI)) - std::log(y);
  rep.imag_residual = std::abs(total.imag()) / total.real();
  rep.panels = static_cast<int>(scheme.leaves.size());
  rep.truncation_t = t_max;
  rep.shift_c = f.c;
  return rep;
}

QuadratureReport log_meijer_g(const GArgs& args, const QuadratureConfig& cfg) {
  args.validate();
  const GammaProduct gp = gamma_product(args);
  QuadratureReport rep = log_density_at(gp, 1.0, cfg);
  for (std::size_t j = 0; j < gp.shapes.size(); ++j)
    rep.log_value += log_gamma_real(gp.shapes[j]) + gp.log_scales[j];
  return rep;
}

QuadratureReport log_meijer_g(const GArgs& args, double tol) {
  QuadratureConfig cfg;
  cfg.tol = tol;
  return log_meijer_g(args, cfg);
}

double delta_log_g(const GArgs& args, long k, double tol) {
  if (k < 0) throw std::invalid_argument("delta_log_g: k must be >= 0");
  if (k == 0 || args.spec.depth() == 0) return 0.0;
  GArgs shifted = args;
  shifted.k_widths = k;
  shifted.k_data = 0;
  GArgs base = args;
  base.k_widths = 0;
  base.k_data = 0;
  QuadratureConfig cfg;
  cfg.tol = tol;
  return log_meijer_g(shifted, cfg).log_value - log_meijer_g(base, cfg).log_value;
}

double delta_log_g_data(const GArgs& args, long k, double tol) {
  if (k < 0) throw std::invalid_argument("delta_log_g_data: k must be >= 0");
  if (k == 0) return 0.0;
  GArgs shifted = args;
  shifted.k_widths = 0;
  shifted.k_data = k;
  GArgs base = args;
  base.k_widths = 0;
  base.k_data = 0;
  QuadratureConfig cfg;
  cfg.tol = tol;
  return log_meijer_g(shifted, cfg).log_value - log_meijer_g(base, cfg).log_value;
}

}  // namespace dln::meijer_g
