#include <doctest.h>

#include "dms/design.hpp"
#include "dms/dynamics.hpp"
#include "dms/models.hpp"
#include "dms/morris_shore.hpp"
#include "dms/propagator.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace dms;
using std::numbers::pi;

namespace {

const CouplingSet kCaseI = design_couplings({DesignTarget::Kind::EqualAllFromGround, 3, 0, +1}, 1.0);

double max_diff(const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return (x - y).cwiseAbs().maxCoeff(); }

Eigen::VectorXd ode_populations(const ModelSpec& model, const CouplingSet& direction, Index initial,
                                const IntegrationConfig& cfg) {
  const auto chis = direction.scaled_to(model.peak_coupling());
  return integrate(chis, model.pulse(), model.detuning(), basis_state(chis.size() + 1, initial), cfg).final_populations();
}

}  // namespace

TEST_CASE("config validation") {
  IntegrationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.t_end = cfg.t_start;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.rel_tol = 1e-2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.sample_times = {0.5, 0.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.t_end = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = {};
  cfg.samples = 5;
  const auto grid = cfg.output_grid();
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == -1.0);
  CHECK(grid[2] == 0.0);
  CHECK(grid.back() == 1.0);
}

TEST_CASE("undriven system stays put") {
  StateVector psi(4);
  psi << Complex(0.5, 0.1), Complex(-0.3, 0.4), Complex(0.2, 0.0), Complex(0.0, 0.0);
  psi.normalize();
  IntegrationConfig cfg;
  cfg.samples = 11;
  const auto rec = integrate(CouplingSet{0.0, 0.0, 0.0}, PulseShape::sech(1.0), DetuningProfile::zero(), psi, cfg);
  for (Index r = 0; r < rec.populations.rows(); ++r)
    CHECK(max_diff(rec.populations.row(r).transpose(), psi.cwiseAbs2()) < 1e-15);
  CHECK(rec.peak_excited == 0.0);
  CHECK((rec.final_state - psi).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("input errors") {
  IntegrationConfig cfg;
  CHECK_THROWS_AS(integrate(CouplingSet{1.0}, PulseShape::sech(1.0), DetuningProfile::zero(), basis_state(3, 0), cfg),
                  std::invalid_argument);
  StateVector half = basis_state(2, 0) * 0.5;
  CHECK_THROWS_AS(integrate(CouplingSet{1.0}, PulseShape::sech(1.0), DetuningProfile::zero(), half, cfg),
                  std::invalid_argument);
}

TEST_CASE("step size underflow is reported") {
  IntegrationConfig cfg;
  cfg.t_start = 0.0;
  cfg.t_end = 1.0;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-16;
  // A kink-free but enormous coupling drives the controller below resolution.
  CHECK_THROWS_AS(integrate(CouplingSet{1e12}, PulseShape::const_unit(), DetuningProfile::zero(), basis_state(2, 0), cfg),
                  NumericalError);
}

TEST_CASE("resonant pi pulse empties the bright state") {
  const auto model = ModelSpec::resonance(pi);
  const auto ck = oracle_cayley_klein(model, default_config(model));
  CHECK(std::abs(ck.a) < 1e-8);
  CHECK(ck.unitarity_defect() < 1e-9);
}

TEST_CASE("Rosen-Zener oracle at an a = -1 detuning") {
  const auto model = ModelSpec::rosen_zener(4.0, 1.0, 1.732);
  const auto ck = oracle_cayley_klein(model, default_config(model));
  CHECK(std::abs(ck.a + 1.0) < 2e-3);
  CHECK(ck.unitarity_defect() < 1e-9);
}

TEST_CASE("Landau-Zener oracle converges with the window") {
  const double chirp = 1.0, chi = std::sqrt(4.0 / pi);  // Lambda = 1
  const auto model = ModelSpec::landau_zener(chi, chirp);
  const auto a1 = oracle_cayley_klein(model, default_config(model, 30.0)).a;
  const auto a2 = oracle_cayley_klein(model, default_config(model, 60.0)).a;
  CHECK(std::abs(std::abs(a1) - std::exp(-1.0)) < 1e-3);
  CHECK(std::abs(std::norm(a1) - std::norm(a2)) < 1e-3);
  // The window recommended for plain diabatic integration gives the same answer.
  const auto wide = oracle_cayley_klein(model, default_config(model, 200.0));
  CHECK(std::abs(std::abs(wide.a) - std::exp(-1.0)) < 1e-4);
}

TEST_CASE("Case I resonance 2pi: equal superposition with a large transient") {
  const auto model = ModelSpec::resonance(2 * pi);
  auto cfg = default_config(model);
  cfg.samples = 201;
  const auto chis = kCaseI.scaled_to(model.peak_coupling());
  const auto rec = integrate(chis, model.pulse(), model.detuning(), basis_state(4, 0), cfg);
  CHECK(max_diff(rec.final_populations(), Eigen::Vector4d(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0)) < 1e-6);
  CHECK(rec.norm_drift <= 1e-9);
  // Independent transient: the excited amplitude is -i (chi_1/chi) sin(A(t)/2).
  const double w = chis[0] * chis[0] / (chis.rms() * chis.rms());
  CHECK(rec.peak_excited == doctest::Approx(w).epsilon(1e-6));
  CHECK(rec.peak_excited > 0.3);
  for (Index r = 0; r < rec.populations.rows(); ++r) {
    CHECK(std::abs(rec.populations.row(r).sum() - 1.0) <= 1e-8);
    CHECK(rec.populations.row(r).maxCoeff() <= 1.0 + 1e-12);
  }
}

TEST_CASE("Case I Rosen-Zener chiT = 18 at the outermost root") {
  const auto model = ModelSpec::rosen_zener(18.0, 1.0, 50.534);
  const auto chis = kCaseI.scaled_to(model.chi);
  const auto cfg = default_config(model);
  const auto rec = integrate(chis, model.pulse(), model.detuning(), basis_state(4, 0), cfg);
  CHECK(max_diff(rec.final_populations(), Eigen::Vector4d(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0)) < 1e-3);
  const auto resonant = integrate(chis, model.pulse(), DetuningProfile::zero(), basis_state(4, 0), cfg);
  CHECK(rec.peak_excited < 0.1 * resonant.peak_excited);
}

TEST_CASE("transient suppression at chiT = 30") {
  const auto model = ModelSpec::rosen_zener(30.0, 1.0, 142.198);
  const auto chis = kCaseI.scaled_to(model.chi);
  const auto cfg = default_config(model);
  CHECK(peak_excited_population(chis, model.pulse(), model.detuning(), basis_state(4, 0), cfg) < 0.01);
  CHECK(peak_excited_population(chis, model.pulse(), DetuningProfile::zero(), basis_state(4, 0), cfg) > 0.1);
  CHECK(peak_excited_population(CouplingSet{0.0, 0.0, 0.0}, model.pulse(), model.detuning(), basis_state(4, 0), cfg) ==
        0.0);
}

TEST_CASE("dark amplitudes and the norm are conserved") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const CouplingSet chis(oracle::random_couplings(rng, n, 0.1, 3.0));
    const auto basis = build_ms_basis(chis);
    StateVector psi(n + 1);
    for (Index k = 0; k <= n; ++k) psi[k] = Complex(u(rng) - 0.5, u(rng) - 0.5);
    psi.normalize();

    const double width = 0.5 + u(rng);
    const auto detuning = trial % 2 ? DetuningProfile::constant(4.0 * u(rng)) : DetuningProfile::tanh(u(rng), 3.0 * u(rng), width);
    IntegrationConfig cfg;
    cfg.t_start = -25.0 * width;
    cfg.t_end = 25.0 * width;
    cfg.max_step = 2.5 * width;
    cfg.samples = 21;
    const auto rec = integrate(chis, PulseShape::sech(width), detuning, psi, cfg);

    double drift = 0.0;
    for (const auto& dark : basis.dark) {
      const Complex b0 = dark.cast<Complex>().dot(psi);
      for (Index r = 0; r < rec.amplitudes.rows(); ++r)
        drift = std::max(drift, std::abs(dark.cast<Complex>().dot(rec.amplitudes.row(r).transpose()) - b0));
    }
    CHECK(drift <= 1e-8);
    CHECK(rec.norm_drift <= 1e-9);
    ++cases;
  }
  CHECK(cases == 100);
}

TEST_CASE("resonant final populations depend only on the area") {
  const CouplingSet direction{0.3, 1.0, 0.6};
  const double area = 1.3 * pi;
  const auto ck = cayley_klein(ModelSpec::resonance(area));
  const auto expected = populations_from_ground(direction, ck, 1).probs;

  const auto gaussian = PulseShape::sampled([](double t) { return std::exp(-t * t); }, -7.0, 7.0, 28001);
  for (const auto& shape : {PulseShape::sech(0.7), PulseShape::rect(1.5), gaussian}) {
    const auto model = ModelSpec::resonance(area, shape);
    auto cfg = default_config(model);
    const auto p = ode_populations(model, direction, 1, cfg);
    // The sampled Gaussian is checked against its own trapezoid area.
    CHECK(max_diff(p, expected) < 1e-6);
  }
}

TEST_CASE("halving the tolerance leaves populations unchanged") {
  const auto model = ModelSpec::demkov_kunike(7.0, 1.0, 2.0, 3.0);
  auto cfg = default_config(model);
  cfg.rel_tol = 1e-8;
  cfg.abs_tol = 1e-10;
  const auto p1 = ode_populations(model, CouplingSet{1.0, 2.0, 0.5}, 0, cfg);
  cfg.rel_tol *= 0.5;
  cfg.abs_tol *= 0.5;
  const auto p2 = ode_populations(model, CouplingSet{1.0, 2.0, 0.5}, 0, cfg);
  CHECK(max_diff(p1, p2) < 1e-6);
}

TEST_CASE("fixed-step fallback agrees with the adaptive integrator") {
  const auto model = ModelSpec::rosen_zener(3.0, 1.0, 1.0);
  auto cfg = default_config(model);
  const auto adaptive = ode_populations(model, CouplingSet{1.0, 1.0}, 0, cfg);
  cfg.method = IntegrationConfig::Method::FixedRk4;
  cfg.fixed_step = 5e-3;
  const auto fixed = ode_populations(model, CouplingSet{1.0, 1.0}, 0, cfg);
  CHECK(max_diff(adaptive, fixed) < 1e-8);
}

TEST_CASE("ODE matches closed forms for every model") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial;
    const CouplingSet direction(oracle::random_couplings(rng, n, 0.1, 2.0));
    const double chi = 0.5 + 6.0 * u(rng), T = 0.5 + u(rng), d0 = 5.0 * u(rng), b = 5.0 * u(rng);
    for (const auto& model : {ModelSpec::resonance(chi * T * pi / 2), ModelSpec::rabi(chi, T, d0),
                              ModelSpec::rosen_zener(chi, T, d0), ModelSpec::allen_eberly(chi, T, b),
                              ModelSpec::demkov_kunike(chi, T, d0, b)}) {
      const auto cfg = default_config(model);
      const Index initial = trial % (n + 1);
      const auto analytic = populations(direction, cayley_klein(model), initial).probs;
      CHECK(max_diff(ode_populations(model, direction, initial, cfg), analytic) < 1e-6);
    }
    const auto lz = ModelSpec::landau_zener(0.3 + 2.0 * u(rng), 0.5 + u(rng));
    const auto analytic = populations(direction, cayley_klein(lz), 0).probs;
    CHECK(max_diff(ode_populations(lz, direction, 0, default_config(lz)), analytic) < 1e-3);
  }
}
