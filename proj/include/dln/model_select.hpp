#ifndef DLN_MODEL_SELECT_HPP
#define DLN_MODEL_SELECT_HPP

namespace dln::model_select {

struct SelectionReport {
  double sigma_star2 = 1.0;
  double l_star = 0.0;
  double lambda_prior_star = 0.0;
  double evidence_gap = 0.0;
  double d_logz_d_lambda_post = 0.0;
};

// argmax_sigma of the evidence at finite depth: nu^{1/(L+1)}.
double sigma_star(double nu, long l);

// argmax_L of the evidence at fixed sigma^2 != 1: log(nu)/log(sigma^2) - 1.
double l_star(double nu, double sigma2);

// argmax over lambda_prior of the wide-regime evidence: sqrt(1+log^2 nu) - 1.
double lambda_prior_star(double nu);

// Per-unit-N log-evidence deficit of a depth-L network against the
// depth-proportional-to-width family at sigma^2 = 1; always <= 0.
double evidence_gap_finite_depth(long l, double alpha, double nu, double sigma2);

// d log Z / d lambda_post = P t*^2 / 4 >= 0.
double d_log_evidence_d_lambda_post(long p, double nu, double lambda_post);

}  // namespace dln::model_select

#endif  // DLN_MODEL_SELECT_HPP
