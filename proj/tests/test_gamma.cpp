#include <doctest.h>

#include "dms/gamma.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using dms::special::gamma;
using dms::special::rgamma;
using cd = std::complex<double>;
using std::numbers::pi;

TEST_CASE("real arguments match std::tgamma") {
  for (double x = -7.75; x <= 25.0; x += 0.5) {
    if (x <= 0.0 && std::floor(x) == x) continue;
    CHECK(oracle::rel_err(gamma(cd(x, 0.0)), std::tgamma(x)) < 1e-13);
  }
  CHECK(oracle::rel_err(gamma(cd(0.5, 0.0)), std::sqrt(pi)) < 1e-15);
}

TEST_CASE("poles") {
  for (int k = 0; k < 5; ++k) CHECK(rgamma(cd(-k, 0.0)) == cd(0.0, 0.0));
  CHECK(std::isinf(gamma(cd(-3.0, 0.0)).real()));
}

TEST_CASE("complex arguments agree with a Stirling-series oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(-40.0, 40.0);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const cd z(re(rng), im(rng));
    worst = std::max(worst, oracle::rel_err(gamma(z), oracle::gamma_stirling(z)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("reflection identity Gamma(1/2+z) Gamma(1/2-z) = pi / cos(pi z)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(-40.0, 40.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const cd z(re(rng), im(rng));
    const cd lhs = gamma(0.5 + z) * gamma(0.5 - z);
    const cd rhs = pi / std::cos(pi * z);
    CHECK(oracle::rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("recurrence Gamma(z+1) = z Gamma(z)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(-40.0, 40.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const cd z(re(rng), im(rng));
    CHECK(oracle::rel_err(gamma(z + 1.0), z * gamma(z)) < 1e-12);
  }
}

TEST_CASE("modulus on the critical line |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)") {
  for (double y = 0.0; y <= 40.0; y += 0.37) {
    const double got = std::norm(gamma(cd(0.5, y)));
    CHECK(std::abs(got / (pi / std::cosh(pi * y)) - 1.0) < 1e-12);
  }
}
