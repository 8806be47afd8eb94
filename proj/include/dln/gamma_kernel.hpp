#ifndef DLN_GAMMA_KERNEL_HPP
#define DLN_GAMMA_KERNEL_HPP

#include <complex>

namespace dln::gamma_kernel {

// Principal branch of log Gamma(z). Recurrence-shifts to Re(z) >= 10 and then
// applies the Stirling series through the 1/z^7 term, which keeps the relative
// error <= 1e-13 on the half-plane Re(z) > 0 for |z| <= 1e6. Arguments with
// Re(z) <= 0 are continued by reflection; non-positive integers throw.
std::complex<double> log_gamma(std::complex<double> z);

// d/dz log Gamma(z), same domain and branch strategy.
std::complex<double> digamma(std::complex<double> z);

// Real-axis conveniences (x > 0).
double log_gamma_real(double x);
double digamma_real(double x);

}  // namespace dln::gamma_kernel

#endif  // DLN_GAMMA_KERNEL_HPP
