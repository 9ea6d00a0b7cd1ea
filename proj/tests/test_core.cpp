#include <doctest.h>

#include "dms/core.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace dms;
using std::numbers::pi;

TEST_CASE("pulse areas for the closed-form envelopes") {
  CHECK(pulse_area(CouplingSet{1.0}, PulseShape::sech(1.0), 0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(pulse_area(CouplingSet{0.0, 1.0}, PulseShape::rect(2.0), 0) == 0.0);
  CHECK(pulse_area(CouplingSet{2.0}, PulseShape::rect(3.0), 0) == doctest::Approx(12.0));

  CHECK(rms_area(CouplingSet{3.0, 4.0}, PulseShape::sech(1.0)) == doctest::Approx(5.0 * pi).epsilon(1e-15));
  CHECK(rms_area(CouplingSet{1.0}, PulseShape::rect(0.5)) == doctest::Approx(1.0));
  CHECK(rms_area(CouplingSet{1.0, 1.0, 1.0}, PulseShape::sech(1.0)) == doctest::Approx(std::sqrt(3.0) * pi));
}

TEST_CASE("sech area agrees with quadrature") {
  const auto shape = PulseShape::sech(0.7);
  const double q = oracle::trapezoid([&](double t) { return shape(t); }, -40.0, 40.0, 400000);
  CHECK(std::abs(q - shape.area()) < 1e-9);
  CHECK(shape.cumulative_area(0.0) == doctest::Approx(0.5 * shape.area()));
}

TEST_CASE("constant envelope has no area") {
  CHECK_THROWS_WITH_AS(pulse_area(CouplingSet{1.0}, PulseShape::const_unit(), 0), "area undefined for a constant envelope",
                       std::invalid_argument);
  CHECK_THROWS_AS(rms_area(CouplingSet{1.0}, PulseShape::const_unit()), std::invalid_argument);
}

TEST_CASE("custom envelopes integrate with the trapezoidal rule") {
  const auto gauss = PulseShape::sampled([](double t) { return std::exp(-t * t); }, -8.0, 8.0, 4001);
  CHECK(gauss.area() == doctest::Approx(std::sqrt(pi)).epsilon(1e-6));
  CHECK(gauss(0.0) == doctest::Approx(1.0));
  CHECK(gauss(9.0) == 0.0);
  CHECK(gauss.cumulative_area(8.0) == doctest::Approx(gauss.area()).epsilon(1e-14));

  CHECK_THROWS_AS(PulseShape::custom({0.0, 1.0}, {1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PulseShape::custom({1.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("coupling set invariants") {
  CHECK_THROWS_AS(CouplingSet(Eigen::VectorXd(0)), std::invalid_argument);
  CHECK_THROWS_AS((CouplingSet{1.0, -0.5}), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const CouplingSet chis(oracle::random_couplings(rng, n, 0.0, 3.0));
    const auto x = chis.partial_norms();
    for (Index k = 1; k < x.size(); ++k) CHECK(x[k] >= x[k - 1]);
    CHECK(x[x.size() - 1] == chis.rms());

    const auto shape = PulseShape::sech(0.3 + 0.1 * (trial % 5));
    double sum_sq = 0.0;
    for (Index k = 0; k < chis.size(); ++k) sum_sq += std::pow(pulse_area(chis, shape, k), 2);
    CHECK(std::abs(std::pow(rms_area(chis, shape), 2) - sum_sq) <= 1e-12 * std::max(1.0, sum_sq));
  }
}

TEST_CASE("detuning profiles and their phases") {
  const auto dk = DetuningProfile::tanh(2.0, 3.0, 0.5);
  CHECK(dk(0.0) == doctest::Approx(2.0));
  CHECK(dk(100.0) == doctest::Approx(5.0));
  CHECK(DetuningProfile::linear(2.0)(3.0) == doctest::Approx(6.0));

  // phase(t) = integral_0^t Delta, checked by quadrature
  const double q = oracle::trapezoid([&](double t) { return dk(t); }, 0.0, 4.0, 200000);
  CHECK(dk.phase(4.0) == doctest::Approx(q).epsilon(1e-9));
  CHECK(dk.phase(-700.0) == doctest::Approx(2.0 * -700.0 + 3.0 * 0.5 * (1400.0 - std::log(2.0))));
}

TEST_CASE("hamiltonian has the arrow structure") {
  const auto h = hamiltonian(CouplingSet{3.0, 4.0}, 0.5, 2.0);
  CHECK(h(0, 2) == doctest::Approx(0.75));
  CHECK(h(2, 1) == doctest::Approx(1.0));
  CHECK(h(2, 2) == doctest::Approx(2.0));
  CHECK(h(0, 1) == 0.0);
  CHECK(h.isApprox(h.transpose()));
}

TEST_CASE("model specs validate their domain") {
  CHECK_THROWS_AS(ModelSpec::landau_zener(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::rosen_zener(-1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::rabi(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::resonance(1.0, PulseShape::const_unit()), std::invalid_argument);

  const auto m = ModelSpec::demkov_kunike(4.0, 0.5, 6.0, 2.0);
  CHECK(m.alpha() == doctest::Approx(1.0));
  CHECK(m.delta() == doctest::Approx(1.5));
  CHECK(m.beta() == doctest::Approx(0.5));

  const auto r = ModelSpec::resonance(2.0 * pi, PulseShape::rect(0.25));
  CHECK(r.peak_coupling() == doctest::Approx(4.0 * pi));
}
