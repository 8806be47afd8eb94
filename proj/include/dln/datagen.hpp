#ifndef DLN_DATAGEN_HPP
#define DLN_DATAGEN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dln/types.hpp"

namespace dln::datagen {

// Training set: columns of x are inputs. Generated data additionally records
// the noise level so a dataset file reproduces the generating configuration.
struct Dataset {
  Eigen::MatrixXd x;  // n0 x p
  Eigen::VectorXd y;  // p
  std::uint64_t seed = 0;
  double sigma_eps = 0.0;

  long n0() const { return x.rows(); }
  long p() const { return x.cols(); }
};

struct Generated {
  Dataset data;
  Eigen::VectorXd v0;  // unit-norm generating signal
};

// x_i iid N(0, I), V0 uniform on the unit sphere, y_i = V0^T x_i + eps_i.
// Fully reproducible from the seed (counter-based streams).
Generated generate_full(long n0, long p, double sigma_eps, std::uint64_t seed);
Dataset generate(long n0, long p, double sigma_eps, std::uint64_t seed);

struct Geometry {
  Eigen::VectorXd theta_star;
  double theta_star_norm2 = 0.0;
  long rank = 0;
};

// Minimum-norm solution of theta^T X = Y (P <= N0); for P > N0 the unique
// least-squares solution via the transpose normal equations. Rank-deficient
// designs (sigma_min <= 1e-10 sigma_max) are rejected.
Geometry min_norm_interpolant(const Dataset& data);

// Orthogonal split x = x_par + x_perp against col(X).
std::pair<Eigen::VectorXd, Eigen::VectorXd> decompose(const Eigen::VectorXd& x,
                                                      const Dataset& data);

// Sigma_perp[i][j] = <x_i_perp, x_j_perp> / (N0 - P); requires P < N0.
Eigen::MatrixXd sigma_perp(const std::vector<Eigen::VectorXd>& test_points,
                           const Dataset& data);

DataSummary summarize(const Dataset& data, const Geometry& geom);

// Columnar little-endian binary format; header carries n0, p, seed, sigma_eps.
void write_dataset(const Dataset& data, const std::string& path);
Dataset read_dataset(const std::string& path);

}  // namespace dln::datagen

#endif  // DLN_DATAGEN_HPP
