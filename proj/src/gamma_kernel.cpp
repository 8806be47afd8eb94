#include "dln/gamma_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace dln::gamma_kernel {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2
constexpr double kPi = 3.14159265358979323846;

// Bernoulli coefficients B_{2n}/(2n(2n-1)) for the Stirling tail of logGamma.
constexpr double kStirling[] = {
    1.0 / 12.0,        // z^-1
    -1.0 / 360.0,      // z^-3
    1.0 / 1260.0,      // z^-5
    -1.0 / 1680.0,     // z^-7
};

// B_{2n}/(2n) for the digamma tail.
constexpr double kStirlingPsi[] = {
    1.0 / 12.0,    // z^-2
    -1.0 / 120.0,  // z^-4
    1.0 / 252.0,   // z^-6
    -1.0 / 240.0,  // z^-8
    1.0 / 132.0,   // z^-10
};

bool is_nonpositive_integer(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Compensated (double-double) pieces for the Stirling leading term
// (z - 1/2) log z - z, whose plain rounding would dominate the error budget
// for |z| up to 1e4.
struct Dd {
  double hi, lo;
};

Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const Dd t = two_sum(s.hi, s.lo);
  return t;
}

Dd dd_mul_d(Dd a, double b) {
  Dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return two_sum(p.hi, p.lo);
}

// log(2) to double-double precision.
constexpr Dd kLn2{0.69314718055994530942, -8.7831158611841131e-18};

// log|z| as a double-double via an exponent split of |z|^2.
Dd dd_log_abs(std::complex<double> z) {
  const Dd xx = two_prod(z.real(), z.real());
  const Dd yy = two_prod(z.imag(), z.imag());
  const Dd n = dd_add(xx, yy);
  int e = 0;
  const double m_hi = std::frexp(n.hi, &e);  // n = m * 2^e, m in [0.5, 1)
  const double m_lo = std::ldexp(n.lo, -e);
  Dd lg = dd_add(dd_mul_d(kLn2, static_cast<double>(e)),
                 two_sum(std::log(m_hi), m_lo / m_hi));
  return dd_mul_d(lg, 0.5);
}

std::complex<double> stirling_log_gamma(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  const Dd big_l = dd_log_abs(z);
  const double arg = std::atan2(y, x);
  // real: (x - 1/2) L - y arg - x ; imag: y L + (x - 1/2) arg - y
  Dd re = dd_mul_d(big_l, x - 0.5);
  re = dd_add(re, dd_mul_d(two_prod(y, arg), -1.0));
  re = dd_add(re, two_sum(-x, kHalfLog2Pi));
  Dd im = dd_mul_d(big_l, y);
  im = dd_add(im, two_prod(x - 0.5, arg));
  im = dd_add(im, {-y, 0.0});
  // Bernoulli tail is O(1/z); plain arithmetic suffices, but fold it into the
  // compensated accumulators so only the final return rounds.
  std::complex<double> tail = 0.0;
  const std::complex<double> rz2 = 1.0 / (z * z);
  std::complex<double> rpow = 1.0 / z;
  for (double c : kStirling) {
    tail += c * rpow;
    rpow *= rz2;
  }
  re = dd_add(re, {tail.real(), 0.0});
  im = dd_add(im, {tail.imag(), 0.0});
  return {re.hi + re.lo, im.hi + im.lo};
}

std::complex<double> stirling_digamma(std::complex<double> z) {
  std::complex<double> sum = std::log(z) - 0.5 / z;
  const std::complex<double> rz2 = 1.0 / (z * z);
  std::complex<double> rpow = rz2;
  for (double c : kStirlingPsi) {
    sum -= c * rpow;
    rpow *= rz2;
  }
  return sum;
}

// log(sin(pi z)) on the principal-ish branch used by the reflection formula.
// Written via exp(-i pi z) to stay finite for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z) {
  const std::complex<double> i(0.0, 1.0);
  if (z.imag() >= 0.0) {
    // sin(pi z) = exp(-i pi z)(1 - exp(2 i pi z)) * (i/2); first factor dominates
    return -i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z)) +
           std::log(0.5 * i);
  }
  return i * kPi * z + std::log(1.0 - std::exp(-2.0 * i * kPi * z)) +
         std::log(-0.5 * i);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() < 0.0) {
    // Reflection; visited only outside the contour kernel's domain.
    return std::log(std::complex<double>(kPi)) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  std::complex<double> shift = 0.0;
  while (z.real() < 20.0 && std::abs(z) < 25.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_log_gamma(z) - shift;
}

std::complex<double> digamma(std::complex<double> z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("digamma: pole at non-positive integer");
  if (z.real() < 0.0) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    const std::complex<double> t = std::tan(kPi * z);
    return digamma(1.0 - z) - kPi / t;
  }
  std::complex<double> shift = 0.0;
  while (z.real() < 20.0 && std::abs(z) < 25.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  return stirling_digamma(z) - shift;
}

double log_gamma_real(double x) { return log_gamma(std::complex<double>(x, 0.0)).real(); }

double digamma_real(double x) { return digamma(std::complex<double>(x, 0.0)).real(); }

}  // namespace dln::gamma_kernel
