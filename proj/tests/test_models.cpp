#include <doctest.h>

#include "dms/models.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace dms;
using std::numbers::pi;

TEST_CASE("resonance: a = cos(A/2), b = -i sin(A/2)") {
  auto ck = cayley_klein(ModelSpec::resonance(2.0 * pi));
  CHECK(std::abs(ck.a - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(ck.b_phase_exact);
  ck = cayley_klein(ModelSpec::resonance(pi));
  CHECK(std::abs(ck.a) < 1e-15);
  CHECK(std::abs(ck.b - Complex(0.0, -1.0)) < 1e-15);
}

TEST_CASE("Rosen-Zener values at integer alpha") {
  // chi T = 2, Delta0 T = 0
  CHECK(std::abs(cayley_klein(ModelSpec::rosen_zener(2.0, 1.0, 0.0)).a + 1.0) < 1e-13);
  // chi T = 4, Delta0 T = 1.732 (exact root sqrt(3))
  CHECK(std::abs(cayley_klein(ModelSpec::rosen_zener(4.0, 1.0, 1.732)).a + 1.0) < 2e-3);
  CHECK(std::abs(cayley_klein(ModelSpec::rosen_zener(4.0, 1.0, std::sqrt(3.0))).a + 1.0) < 1e-12);
  // atan x + atan(x/3) = pi/2 exactly at x = sqrt(3)
  CHECK(std::atan(std::sqrt(3.0)) + std::atan(std::sqrt(3.0) / 3.0) == doctest::Approx(pi / 2));
}

TEST_CASE("Landau-Zener a = exp(-pi chi^2 / 4C)") {
  const double chi2_over_c = 4.0 / pi * std::log(2.0);
  const auto ck = cayley_klein(ModelSpec::landau_zener(std::sqrt(chi2_over_c), 1.0));
  CHECK(ck.a.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ck.a.imag() == 0.0);
  CHECK_FALSE(ck.b_phase_exact);
  CHECK(std::norm(ck.b) == doctest::Approx(0.75));

  for (double x : {1e-6, 0.01, 0.3, 1.0, 5.0, 40.0}) {
    const auto a = cayley_klein(ModelSpec::landau_zener(std::sqrt(x), 1.0)).a;
    CHECK(a.imag() == 0.0);
    CHECK(a.real() > 0.0);
    CHECK(a.real() <= 1.0);
  }
  CHECK(cayley_klein(ModelSpec::landau_zener(1e-5, 1.0)).a.real() == doctest::Approx(1.0));
  CHECK(cayley_klein(ModelSpec::landau_zener(20.0, 1.0)).a.real() < 1e-100);
}

TEST_CASE("Demkov-Kunike reduces to Rosen-Zener at B = 0 and to Allen-Eberly at Delta0 = 0") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double chi = u(rng), T = 0.5 + u(rng) / 6.0, d0 = u(rng), b = u(rng);
    const auto dk_rz = cayley_klein(ModelSpec::demkov_kunike(chi, T, d0, 0.0)).a;
    const auto rz = cayley_klein(ModelSpec::rosen_zener(chi, T, d0)).a;
    CHECK(std::abs(dk_rz - rz) < 1e-12);

    const auto dk_ae = cayley_klein(ModelSpec::demkov_kunike(chi, T, 0.0, b)).a;
    const auto ae = cayley_klein(ModelSpec::allen_eberly(chi, T, b)).a;
    CHECK(std::abs(dk_ae - ae) < 1e-12);
  }
}

TEST_CASE("|a|^2 + |b|^2 = 1 for every model") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double chi = u(rng), T = 0.2 + u(rng) / 4.0, d0 = u(rng), b = u(rng);
    for (const auto& m : {ModelSpec::resonance(chi * 3.0), ModelSpec::rabi(chi, T, d0), ModelSpec::landau_zener(chi, 0.5 + b),
                          ModelSpec::rosen_zener(chi, T, d0), ModelSpec::allen_eberly(chi, T, b),
                          ModelSpec::demkov_kunike(chi, T, d0, b)}) {
      const auto ck = cayley_klein(m);
      CHECK(ck.unitarity_defect() <= 1e-12);
      CHECK(std::norm(ck.a) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("Rosen-Zener modulus closed form") {
  CHECK(rz_abs_a_squared(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(std::abs(rz_abs_a_squared(0.5, 0.0)) < 1e-15);
  const double c = std::cosh(pi);
  CHECK(rz_abs_a_squared(1.5, 1.0) == doctest::Approx(1.0 - 1.0 / (c * c)).epsilon(1e-14));
  CHECK(std::norm(cayley_klein(ModelSpec::rosen_zener(3.0, 1.0, 2.0)).a) == doctest::Approx(1.0 - 1.0 / (c * c)).epsilon(1e-10));

  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) {
      const double alpha = 15.0 * i / 39.0, delta = 25.0 * j / 39.0;
      const auto a = cayley_klein(ModelSpec::rosen_zener(2.0 * alpha, 1.0, 2.0 * delta)).a;
      worst = std::max(worst, std::abs(std::norm(a) - rz_abs_a_squared(alpha, delta)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("integer-alpha product form") {
  CHECK(std::abs(rz_integer_alpha_a(1, 0.0) + 1.0) < 1e-15);
  CHECK(std::abs(rz_integer_alpha_a(2, std::sqrt(3.0)) + 1.0) < 1e-10);
  CHECK(std::abs(rz_integer_alpha_a(1, 1e6) - 1.0) < 1e-5);
  CHECK_THROWS_AS(rz_integer_alpha_a(0, 1.0), std::invalid_argument);

  for (int l = 1; l <= 15; ++l) {
    for (double x = 0.0; x < 150.0; x += 3.7) {
      const auto prod = rz_integer_alpha_a(l, x);
      CHECK(std::abs(std::abs(prod) - 1.0) < 1e-12);
      CHECK(std::abs(prod - cayley_klein(ModelSpec::rosen_zener(2.0 * l, 1.0, x)).a) < 1e-10);
      CHECK(std::abs(prod - oracle::rz_a_stirling(l, 0.5 * x)) < 1e-9);
    }
  }
}

TEST_CASE("Allen-Eberly continuation beyond beta > alpha stays real and bounded") {
  const auto a = cayley_klein(ModelSpec::allen_eberly(1.0, 1.0, 3.0)).a;
  CHECK(a.imag() == 0.0);
  CHECK(a.real() == doctest::Approx(std::cosh(pi * std::sqrt(1.5 * 1.5 - 0.25)) / std::cosh(1.5 * pi)));
}

TEST_CASE("Rabi model limits") {
  CHECK(std::abs(cayley_klein(ModelSpec::rabi(0.0, 2.0, 3.0)).a - 1.0) < 1e-15);
  // resonant rect pulse of area 2 chi T
  const auto ck = cayley_klein(ModelSpec::rabi(1.3, 0.7, 0.0));
  CHECK(ck.a.real() == doctest::Approx(std::cos(1.3 * 0.7)));
  // far detuned: no excitation and no net phase on the bright state
  CHECK(std::abs(cayley_klein(ModelSpec::rabi(1.0, 1.0, 1e7)).a - 1.0) < 1e-6);
}
