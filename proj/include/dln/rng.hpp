#ifndef DLN_RNG_HPP
#define DLN_RNG_HPP

#include <cmath>
#include <cstdint>

namespace dln::rng {

// Philox4x32-10 counter-based generator. A (seed, stream) pair addresses an
// independent stream; parallel workers derive substreams by stream id, so
// results do not depend on scheduling or machine word order.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  Philox stream(std::uint64_t i) const {
    Philox p(*this);
    p.stream_lo_ = static_cast<std::uint32_t>(i);
    p.stream_hi_ = static_cast<std::uint32_t>(i >> 32);
    p.counter_ = 0;
    p.buf_fill_ = 0;
    p.have_normal_ = false;
    return p;
  }

  std::uint64_t seed() const {
    return (static_cast<std::uint64_t>(key1_) << 32) | key0_;
  }

  std::uint32_t next_u32() {
    if (buf_fill_ == 0) refill();
    return buf_[--buf_fill_];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double next_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // Standard normal via Box-Muller (second deviate cached).
  double next_normal() {
    if (have_normal_) {
      have_normal_ = false;
      return cached_normal_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647693 * u2;
    cached_normal_ = r * std::sin(a);
    have_normal_ = true;
    return r * std::cos(a);
  }

  // Gamma(shape, 1) for shape >= 1 by the Marsaglia-Tsang squeeze.
  double next_gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = next_normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_double();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b, std::uint32_t* lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    *lo = static_cast<std::uint32_t>(prod);
    return static_cast<std::uint32_t>(prod >> 32);
  }

  void refill() {
    std::uint32_t x0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t x1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t x2 = stream_lo_;
    std::uint32_t x3 = stream_hi_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t lo0, lo1;
      const std::uint32_t hi0 = mulhi(0xD2511F53u, x0, &lo0);
      const std::uint32_t hi1 = mulhi(0xCD9E8D57u, x2, &lo1);
      const std::uint32_t y0 = hi1 ^ x1 ^ k0;
      const std::uint32_t y1 = lo1;
      const std::uint32_t y2 = hi0 ^ x3 ^ k1;
      const std::uint32_t y3 = lo0;
      x0 = y0; x1 = y1; x2 = y2; x3 = y3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_[0] = x0; buf_[1] = x1; buf_[2] = x2; buf_[3] = x3;
    buf_fill_ = 4;
    ++counter_;
  }

  std::uint32_t key0_, key1_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t counter_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_fill_ = 0;
  bool have_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace dln::rng

#endif  // DLN_RNG_HPP
