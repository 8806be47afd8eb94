#ifndef DLN_SADDLE_HPP
#define DLN_SADDLE_HPP

#include <utility>

#include "dln/types.hpp"

namespace dln::saddle {

struct SaddleSolution {
  double root = 0.0;
  double residual = 0.0;  // |log LHS - log RHS| at the root
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
};

// Unique z* > max{-1, -alpha} with (1 + z*/alpha)(1 + z*)^L = nu / sigma^{2(L+1)}.
// Solved in log form; the right side is a strictly increasing bijection.
SaddleSolution solve_z_star(double nu, double sigma2, double alpha, long l);

// Unique t* > -1 with (1 + t*) exp(lambda_post t*) = nu.
SaddleSolution solve_t_star(double nu, double lambda_post);

// zeta* solves nu / sigma^{2(L+1)} = (1 + 2N zeta/P) prod_l (1 + 2N zeta/N_l)
// with N the smallest hidden width (P when L = 0); zeta** is the closed-form
// 1/N correction of the saddle for shift k. (N zeta*, zeta**) do not depend on
// the choice of scale.
std::pair<double, double> solve_zeta(const NetworkSpec& spec,
                                     const DataSummary& data, long k);

}  // namespace dln::saddle

#endif  // DLN_SADDLE_HPP
