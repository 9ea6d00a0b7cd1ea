#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// analytic paths, so agreement is a genuine cross-check.

#include <complex>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

/// Gamma(z) by upward recurrence to Re z > 20 and an 11-term Stirling series.
inline cd gamma_stirling(cd z) {
  cd shift = 1.0;
  while (z.real() < 20.0) {
    shift *= z;
    z += 1.0;
  }
  // Bernoulli coefficients B_{2k} / (2k (2k-1))
  static const double c[] = {1.0 / 12,         -1.0 / 360,       1.0 / 1260,         -1.0 / 1680,
                             1.0 / 1188,       -691.0 / 360360,  1.0 / 156,          -3617.0 / 122400,
                             43867.0 / 244188, -174611.0 / 125400, 77683.0 / 5796};
  cd zinv = 1.0 / z, z2inv = zinv * zinv, term = zinv, sum = 0.0;
  for (double ck : c) {
    sum += ck * term;
    term *= z2inv;
  }
  const cd log_g = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + sum;
  return std::exp(log_g) / shift;
}

inline double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

/// RZ a at integer alpha via the Gamma oracle above.
inline cd rz_a_stirling(double alpha, double delta) {
  const cd half(0.5, delta);
  const cd g = gamma_stirling(half);
  return g * g / (gamma_stirling(half + alpha) * gamma_stirling(half - alpha));
}

/// Brute-force roots of a(x) = -1 for the integer-alpha product: scan Im a for
/// sign changes where Re a < 0, then bisect.
inline std::vector<double> rz_roots_by_scan(int l, double x_max, double dx) {
  auto a_of = [l](double x) {
    cd a = (l % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < l; ++k) a *= cd(2.0 * k + 1, -x) / cd(2.0 * k + 1, x);
    return a;
  };
  std::vector<double> roots;
  if (std::abs(a_of(0.0) + 1.0) < 1e-12) roots.push_back(0.0);
  double x0 = dx;
  cd a0 = a_of(x0);
  for (double x1 = 2 * dx; x1 <= x_max; x1 += dx) {
    const cd a1 = a_of(x1);
    if ((a0.imag() > 0) != (a1.imag() > 0) && a0.real() < 0 && a1.real() < 0) {
      double lo = x0, hi = x1;
      const bool lo_pos = a0.imag() > 0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((a_of(mid).imag() > 0) == lo_pos ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    a0 = a1;
  }
  return roots;
}

/// Trapezoidal quadrature on a uniform grid.
template <typename F>
double trapezoid(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int k = 1; k < n; ++k) s += f(a + k * h);
  return s * h;
}

inline Eigen::VectorXd random_couplings(std::mt19937_64& rng, int n, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = u(rng);
  return v;
}

}  // namespace oracle
