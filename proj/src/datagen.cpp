#include "dln/datagen.hpp"

#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "dln/rng.hpp"

namespace dln::datagen {

namespace {

constexpr std::uint64_t kMagic = 0x444c4e4453455431ull;  // "DLNDSET1"
constexpr double kRankTol = 1e-10;

}  // namespace

Generated generate_full(long n0, long p, double sigma_eps, std::uint64_t seed) {
  if (n0 < 1 || p < 1)
    throw std::invalid_argument("generate: n0 and p must be >= 1");
  if (sigma_eps < 0.0)
    throw std::invalid_argument("generate: sigma_eps must be >= 0");
  Generated out;
  out.data.seed = seed;
  out.data.sigma_eps = sigma_eps;
  out.data.x.resize(n0, p);
  // Stream 0: design matrix; stream 1: signal; stream 2: label noise.
  rng::Philox gx(seed, 0);
  for (long j = 0; j < p; ++j)
    for (long i = 0; i < n0; ++i) out.data.x(i, j) = gx.next_normal();
  rng::Philox gv(seed, 1);
  out.v0.resize(n0);
  for (long i = 0; i < n0; ++i) out.v0(i) = gv.next_normal();
  out.v0.normalize();
  rng::Philox ge(seed, 2);
  out.data.y.resize(p);
  for (long j = 0; j < p; ++j)
    out.data.y(j) = out.v0.dot(out.data.x.col(j)) + sigma_eps * ge.next_normal();
  return out;
}

Dataset generate(long n0, long p, double sigma_eps, std::uint64_t seed) {
  return generate_full(n0, p, sigma_eps, seed).data;
}

Geometry min_norm_interpolant(const Dataset& data) {
  const long n0 = data.n0(), p = data.p();
  // theta^T X = Y  <=>  X^T theta = Y; COD yields the minimum-norm solution
  // and doubles as the least-squares solve when P > N0.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      data.x.transpose());
  cod.setThreshold(kRankTol);
  const long full = std::min(n0, p);
  if (cod.rank() < full)
    throw std::invalid_argument("min_norm_interpolant: rank-deficient design");
  Geometry g;
  g.theta_star = cod.solve(data.y);
  g.theta_star_norm2 = g.theta_star.squaredNorm();
  g.rank = cod.rank();
  return g;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> decompose(const Eigen::VectorXd& x,
                                                      const Dataset& data) {
  if (x.size() != data.n0())
    throw std::invalid_argument("decompose: dimension mismatch");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(data.x);
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(data.n0(), std::min(data.n0(), data.p()));
  Eigen::VectorXd x_par = q * (q.transpose() * x);
  Eigen::VectorXd x_perp = x - x_par;
  return {std::move(x_par), std::move(x_perp)};
}

Eigen::MatrixXd sigma_perp(const std::vector<Eigen::VectorXd>& test_points,
                           const Dataset& data) {
  const long n0 = data.n0(), p = data.p();
  if (p >= n0)
    throw std::invalid_argument("sigma_perp: requires P < N0");
  const long k = static_cast<long>(test_points.size());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(data.x);
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n0, p);
  Eigen::MatrixXd perp(n0, k);
  for (long i = 0; i < k; ++i) {
    if (test_points[i].size() != n0)
      throw std::invalid_argument("sigma_perp: dimension mismatch");
    perp.col(i) = test_points[i] - q * (q.transpose() * test_points[i]);
  }
  return (perp.transpose() * perp) / static_cast<double>(n0 - p);
}

DataSummary summarize(const Dataset& data, const Geometry& geom) {
  return DataSummary::from(data.p(), data.n0(), geom.theta_star_norm2);
}

void write_dataset(const Dataset& data, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_dataset: cannot open " + path);
  const std::uint64_t n0 = static_cast<std::uint64_t>(data.n0());
  const std::uint64_t p = static_cast<std::uint64_t>(data.p());
  std::fwrite(&kMagic, 8, 1, f);
  std::fwrite(&n0, 8, 1, f);
  std::fwrite(&p, 8, 1, f);
  std::fwrite(&data.seed, 8, 1, f);
  std::fwrite(&data.sigma_eps, 8, 1, f);
  std::fwrite(data.x.data(), 8, static_cast<std::size_t>(data.x.size()), f);
  std::fwrite(data.y.data(), 8, static_cast<std::size_t>(data.y.size()), f);
  if (std::fclose(f) != 0) throw std::runtime_error("write_dataset: close failed");
}

Dataset read_dataset(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("read_dataset: cannot open " + path);
  std::uint64_t magic = 0, n0 = 0, p = 0;
  Dataset d;
  bool ok = std::fread(&magic, 8, 1, f) == 1 && magic == kMagic &&
            std::fread(&n0, 8, 1, f) == 1 && std::fread(&p, 8, 1, f) == 1 &&
            std::fread(&d.seed, 8, 1, f) == 1 &&
            std::fread(&d.sigma_eps, 8, 1, f) == 1;
  if (ok) {
    d.x.resize(static_cast<long>(n0), static_cast<long>(p));
    d.y.resize(static_cast<long>(p));
    ok = std::fread(d.x.data(), 8, static_cast<std::size_t>(d.x.size()), f) ==
             static_cast<std::size_t>(d.x.size()) &&
         std::fread(d.y.data(), 8, static_cast<std::size_t>(d.y.size()), f) ==
             static_cast<std::size_t>(d.y.size());
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("read_dataset: malformed file " + path);
  return d;
}

}  // namespace dln::datagen
