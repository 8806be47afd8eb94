#ifndef DLN_TYPES_HPP
#define DLN_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dln {

// Architecture and prior of a depth-L linear network f(x) = W^(L+1)...W^(1) x
// with scalar output. widths.size() == L; an empty vector means no hidden
// layers (plain Gaussian linear model).
struct NetworkSpec {
  long n0 = 1;
  std::vector<long> widths;
  double sigma2 = 1.0;

  long depth() const { return static_cast<long>(widths.size()); }

  void validate() const {
    if (n0 < 1) throw std::invalid_argument("NetworkSpec: n0 must be >= 1");
    for (long w : widths)
      if (w < 1) throw std::invalid_argument("NetworkSpec: widths must be >= 1");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("NetworkSpec: sigma2 must be > 0");
  }
};

// Sufficient statistics of a training set: only P, alpha0 = P/N0 and the
// squared norm of the minimum-norm interpolant enter the posterior.
struct DataSummary {
  long p = 1;
  double alpha0 = 1.0;
  double theta_star_norm2 = 1.0;
  double nu = 1.0;  // theta_star_norm2 / alpha0

  static DataSummary from(long p, long n0, double theta_star_norm2) {
    DataSummary d;
    d.p = p;
    d.alpha0 = static_cast<double>(p) / static_cast<double>(n0);
    d.theta_star_norm2 = theta_star_norm2;
    d.nu = theta_star_norm2 / d.alpha0;
    return d;
  }

  void validate() const {
    if (p < 1) throw std::invalid_argument("DataSummary: p must be >= 1");
    if (!(alpha0 > 0.0) || alpha0 > 1.0)
      throw std::invalid_argument("DataSummary: alpha0 must be in (0, 1]");
    if (!(theta_star_norm2 >= 0.0))
      throw std::invalid_argument("DataSummary: theta_star_norm2 must be >= 0");
    const double want = theta_star_norm2 / alpha0;
    if (!(std::abs(nu - want) <= 1e-10 * std::max(1.0, std::abs(want))))
      throw std::invalid_argument("DataSummary: nu inconsistent with fields");
  }
};

}  // namespace dln

#endif  // DLN_TYPES_HPP
