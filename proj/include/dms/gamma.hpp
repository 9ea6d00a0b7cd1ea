#pragma once

#include <complex>

/// Complex Gamma function for the Cayley-Klein formulas of the sech-pulse
/// models. Lanczos series (g = 671/128, 14 terms) on Re z >= 1/2 and the
/// reflection formula elsewhere; relative accuracy ~1e-14 for |Im z| <= 40.
namespace dms::special {

/// A branch of log Gamma(z); only exp() of the result is meaningful.
std::complex<double> log_gamma(std::complex<double> z);

/// A branch of log(1/Gamma(z)). Real part is -inf at the poles z = 0, -1, -2, ...
std::complex<double> log_rgamma(std::complex<double> z);

std::complex<double> gamma(std::complex<double> z);

/// 1/Gamma(z), an entire function (exactly zero at the poles of Gamma).
std::complex<double> rgamma(std::complex<double> z);

/// A branch of log sin(pi z), stable for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z);

}  // namespace dms::special
