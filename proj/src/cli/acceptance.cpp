#include "dms/cli/acceptance.hpp"

#include "dms/cli/commands.hpp"
#include "dms/cli/parallel.hpp"
#include "dms/cli/reference.hpp"
#include "dms/dynamics.hpp"
#include "dms/models.hpp"
#include "dms/morris_shore.hpp"
#include "dms/propagator.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace dms::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

const json kCaseI = {{"design", "equal_all_from_ground"}, {"N", 3}};
const json kCaseII = {{"design", "equal_all_except_initial"}, {"N", 3}};

json rz(double chi_t, double delta0_t) {
  return {{"kind", "rosen_zener"}, {"chi", chi_t}, {"T", 1.0}, {"delta0", delta0_t}};
}

CsvTable rz_root_table() {
  CsvTable t;
  t.header_comments = {kVersion, "Rosen-Zener detunings with a = -1; reference values to three decimals"};
  t.columns = {"chiT", "delta0T", "reference", "abs_a_plus_1"};
  const auto& table = reference::rz_minus_one_table();
  for (int l = 1; l <= 15; ++l) {
    const auto report = rz_minus_one_detunings(l);
    const auto& printed = table[static_cast<std::size_t>(l - 1)];
    for (std::size_t k = 0; k < report.roots.size(); ++k) {
      const double x = report.roots[k].delta0_T;
      const double ref = k < printed.size() ? printed[k] : std::nan("");
      const double res = std::abs(cayley_klein(ModelSpec::rosen_zener(2.0 * l, 1.0, x)).a + 1.0);
      t.rows.push_back({2.0 * l, x, ref, res});
    }
  }
  return t;
}

struct Artifact {
  const char* file;
  std::function<CsvTable()> make;
};

std::vector<Artifact> artifacts() {
  auto cfg = [](Command c, json doc) { return parse_config(c, doc); };
  auto detuning_scan = [=](const json& couplings) {
    return cfg(Command::ScanDetuning,
               {{"model", rz(18, 0)}, {"couplings", couplings}, {"scan", {{"variable", "delta0T"}, {"from", 0}, {"to", 60}, {"points", 601}}}});
  };
  auto evolution = [=](double delta0_t) {
    return cfg(Command::Evolve, {{"model", rz(18, delta0_t)},
                                 {"couplings", kCaseI},
                                 {"scan", {{"variable", "t_over_T"}, {"from", -10}, {"to", 10}, {"points", 401}}}});
  };
  return {
      {"rz_minus_one_roots.csv", rz_root_table},
      {"detuning_scan_case1.csv", [=] { return scan_detuning(detuning_scan(kCaseI)); }},
      {"detuning_scan_case2.csv", [=] { return scan_detuning(detuning_scan(kCaseII)); }},
      {"area_scan.csv",
       [=] {
         return scan_area(cfg(Command::ScanArea,
                              {{"model", rz(18, 50.534)},
                               {"couplings", kCaseI},
                               {"scan", {{"variable", "rms_area"}, {"from", 0}, {"to", 24 * pi}, {"points", 481}}}}));
       }},
      {"evolution_resonant.csv", [=] { return evolve(evolution(0.0)); }},
      {"evolution_detuned.csv", [=] { return evolve(evolution(50.534)); }},
      {"lz_scan.csv",
       [=] {
         return lz_scan(cfg(Command::LzScan, {{"model", {{"kind", "landau_zener"}, {"chi", 1.0}, {"chirp", 1.0}}},
                                              {"couplings", {1.0, 1.0, 1.0}},
                                              {"scan", {{"variable", "Lambda"}, {"from", 0}, {"to", 10}, {"points", 201}}}}));
       }},
  };
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

void rz_roots(Outcome& o) {
  const auto& table = reference::rz_minus_one_table();
  double worst_value = 0.0, worst_residual = 0.0;
  int roots = 0;
  for (int l = 1; l <= 15; ++l) {
    const auto report = rz_minus_one_detunings(l);
    const auto& printed = table[static_cast<std::size_t>(l - 1)];
    if (report.roots.size() != printed.size()) {
      o.require(false, "root count for chiT=" + std::to_string(2 * l));
      continue;
    }
    for (std::size_t k = 0; k < printed.size(); ++k, ++roots) {
      worst_value = std::max(worst_value, std::abs(report.roots[k].delta0_T - printed[k]));
      const auto a = cayley_klein(ModelSpec::rosen_zener(2.0 * l, 1.0, report.roots[k].delta0_T)).a;
      worst_residual = std::max(worst_residual, std::abs(a + 1.0));
    }
  }
  o.require(worst_value <= 2e-3, "roots within 2e-3 of the reference table");
  o.require(worst_residual <= 1e-6, "|a+1| <= 1e-6");
  o.detail << "15 rows, " << roots << " roots, max |x - table| = " << sci(worst_value)
           << ", max |a+1| = " << sci(worst_residual);
}

void rz_identity(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) {
      const double alpha = 15.0 * i / 39.0, delta = 25.0 * j / 39.0;
      const auto a = cayley_klein(ModelSpec::rosen_zener(2.0 * alpha, 1.0, 2.0 * delta)).a;
      worst = std::max(worst, std::abs(std::norm(a) - rz_abs_a_squared(alpha, delta)));
    }
  }
  o.require(worst <= 1e-10, "|a|^2 identity to 1e-10");
  o.detail << "1600 grid points, max deviation " << sci(worst);
}

void propagator_structure(Outcome& o) {
  const CouplingSet chis{1.0, 2.0, 3.0};
  const double chi2 = 14.0;
  double worst = 0.0;
  for (double area : {pi / 2, pi, 2 * pi, 3 * pi}) {
    const auto u = assemble_propagator(chis, cayley_klein(ModelSpec::resonance(area))).matrix;
    const double s4 = std::pow(std::sin(area / 4), 2), s2 = std::sin(area / 2);
    Eigen::MatrixXcd want(4, 4);
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 3; ++n) want(m, n) = (m == n ? 1.0 : 0.0) - 2.0 * chis[m] * chis[n] / chi2 * s4;
      want(m, 3) = want(3, m) = Complex(0.0, -chis[m] / std::sqrt(chi2) * s2);
    }
    want(3, 3) = std::cos(area / 2);
    worst = std::max(worst, (u - want).cwiseAbs().maxCoeff());
  }
  o.require(worst <= 1e-12, "16 entries to 1e-12");
  o.detail << "4 areas x 16 entries, max deviation " << sci(worst);
}

struct Instance {
  ModelSpec model;
  CouplingSet direction{1.0};
  Index initial = 0;
};

std::vector<Instance> random_instances(ModelKind kind, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) {
    const int n = 1 + static_cast<int>(u(rng) * 6.0) % 6;
    Eigen::VectorXd c(n);
    for (int m = 0; m < n; ++m) c[m] = 0.05 + u(rng);
    const double chi = 8.0 * u(rng), T = 0.5 + 1.5 * u(rng), d0 = 8.0 * u(rng), b = 8.0 * u(rng);
    ModelSpec model;
    switch (kind) {
      case ModelKind::Resonance:
        model = ModelSpec::resonance(6 * pi * u(rng), u(rng) < 0.5 ? PulseShape::sech(T) : PulseShape::rect(T));
        break;
      case ModelKind::Rabi: model = ModelSpec::rabi(chi, T, d0); break;
      case ModelKind::RosenZener: model = ModelSpec::rosen_zener(chi, T, d0); break;
      case ModelKind::AllenEberly: model = ModelSpec::allen_eberly(chi, T, b); break;
      case ModelKind::DemkovKunike: model = ModelSpec::demkov_kunike(chi, T, d0, b); break;
      case ModelKind::LandauZener: {
        const double lambda = 0.05 + 5.0 * u(rng), chirp = 0.3 + 2.7 * u(rng);
        model = ModelSpec::landau_zener(std::sqrt(4.0 * lambda * chirp / pi), chirp);
        break;
      }
    }
    const Index initial = static_cast<Index>(u(rng) * (n + 1)) % (n + 1);
    out.push_back({model, CouplingSet(c), initial});
  }
  return out;
}

Eigen::VectorXd ode_final(const Instance& in, const IntegrationConfig& cfg) {
  const auto chis = in.direction.scaled_to(in.model.peak_coupling());
  return integrate(chis, in.model.pulse(), in.model.detuning(), basis_state(chis.size() + 1, in.initial), cfg)
      .final_populations();
}

void oracle_equivalence(Outcome& o) {
  const ModelKind kinds[] = {ModelKind::Resonance,  ModelKind::Rabi,        ModelKind::RosenZener,
                             ModelKind::AllenEberly, ModelKind::DemkovKunike, ModelKind::LandauZener};
  std::uint64_t seed = 1000;
  for (ModelKind kind : kinds) {
    const auto instances = random_instances(kind, seed++, 50);
    const bool lz = kind == ModelKind::LandauZener;
    std::vector<double> err(instances.size()), doubling(instances.size(), 0.0);
    parallel_for(instances.size(), [&](std::size_t k) {
      const auto& in = instances[k];
      const auto analytic = populations(in.direction, cayley_klein(in.model), in.initial).probs;
      const auto p = ode_final(in, default_config(in.model));
      err[k] = max_abs(p - analytic);
      if (lz) {
        const auto wide = ode_final(in, default_config(in.model, 60.0));
        doubling[k] = max_abs(wide - p);
        err[k] = std::max(err[k], max_abs(wide - analytic));
      }
    });
    const double worst = *std::max_element(err.begin(), err.end());
    const double tol = lz ? 1e-3 : 1e-6;
    o.require(worst <= tol, std::string(to_string(kind)) + " within " + sci(tol));
    o.detail << to_string(kind) << " " << sci(worst);
    if (lz) {
      const double w = *std::max_element(doubling.begin(), doubling.end());
      o.require(w <= 1e-3, "landau_zener window doubling within 1e-3");
      o.detail << " (window doubling " << sci(w) << ")";
    }
    o.detail << (lz ? "" : ", ");
  }
  o.detail << "; 50 instances per model";
}

void desk_experiments(Outcome& o) {
  const auto case1 = design_couplings({DesignTarget::Kind::EqualAllFromGround, 3, 0, +1}, 1.0);
  const auto case2 = design_couplings({DesignTarget::Kind::EqualAllExceptInitial, 3, 0, +1}, 1.0);
  const CouplingSet quad{3.0, 1.0, 1.0, 1.0};

  const auto res = ModelSpec::resonance(2 * pi);
  const Eigen::Vector4d third(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0);
  const double a_analytic = max_abs(populations(case1, cayley_klein(res), 0).probs - third);
  const double a_oracle = max_abs(ode_final({res, case1, 0}, default_config(res)) - third);
  o.require(a_analytic <= 1e-6 && a_oracle <= 1e-6, "(a) Case I resonance to 1e-6");

  const auto rzm = ModelSpec::rosen_zener(18.0, 1.0, 50.534);
  const Eigen::Vector4d half(0.0, 0.5, 0.5, 0.0);
  const double b_analytic = max_abs(populations(case2, cayley_klein(rzm), 0).probs - half);
  const double b_oracle = max_abs(ode_final({rzm, case2, 0}, default_config(rzm)) - half);
  o.require(b_analytic <= 1e-3 && b_oracle <= 1e-3, "(b) Case II Rosen-Zener to 1e-3");

  Eigen::VectorXd quarter = Eigen::VectorXd::Constant(5, 0.25);
  quarter[4] = 0.0;
  const double c_analytic = max_abs(populations(quad, cayley_klein(res), 0).probs - quarter);
  const double c_oracle = max_abs(ode_final({res, quad, 0}, default_config(res)) - quarter);
  o.require(c_analytic <= 1e-6 && c_oracle <= 1e-6, "(c) N=4 quarter split to 1e-6");

  o.detail << "(a) " << sci(a_analytic) << "/" << sci(a_oracle) << ", (b) " << sci(b_analytic) << "/"
           << sci(b_oracle) << ", (c) " << sci(c_analytic) << "/" << sci(c_oracle) << " [analytic/ODE]";
}

void transient_suppression(Outcome& o) {
  const auto model = ModelSpec::rosen_zener(30.0, 1.0, 142.198);
  const auto chis = design_couplings({DesignTarget::Kind::EqualAllFromGround, 3, 0, +1}, 30.0);
  const auto cfg = default_config(model);
  const double detuned = peak_excited_population(chis, model.pulse(), model.detuning(), basis_state(4, 0), cfg);
  const double resonant = peak_excited_population(chis, model.pulse(), DetuningProfile::zero(), basis_state(4, 0), cfg);
  o.require(detuned < 0.01, "detuned peak below 0.01");
  o.require(resonant > 0.1, "resonant peak above 0.1");
  o.detail << "peak excited " << sci(detuned) << " at Delta T = 142.198, " << sci(resonant) << " on resonance";
}

void lz_asymptotics(Outcome& o, const fs::path& dir) {
  const CouplingSet eq{1.0, 1.0, 1.0};
  const Eigen::Vector3d asym(4.0 / 9, 1.0 / 9, 1.0 / 3);
  const auto p = lz_populations(eq, 10.0, 0).probs;
  const double analytic = max_abs(Eigen::Vector3d(p[0], p[1], p[3]) - asym);
  o.require(analytic <= 1e-3, "analytic populations at Lambda = 10");

  const auto model = ModelSpec::landau_zener(std::sqrt(40.0 / pi), 1.0);
  const auto q = ode_final({model, eq, 0}, default_config(model));
  const double oracle = max_abs(Eigen::Vector3d(q[0], q[1], q[3]) - asym);
  o.require(oracle <= 1e-3, "ODE populations at Lambda = 10");

  const auto scan = read_csv_file((dir / "lz_scan.csv").string());
  bool monotone = scan.rows.size() > 2;
  for (std::size_t r = 1; r < scan.rows.size(); ++r)
    for (int c = 0; c < 3; ++c)
      monotone = monotone && std::abs(scan.rows[r][c + 1] - asym[c]) <= std::abs(scan.rows[r - 1][c + 1] - asym[c]) + 1e-15;
  o.require(monotone, "scan approaches the asymptotes monotonically");
  o.detail << "Lambda=10: analytic " << sci(analytic) << ", ODE " << sci(oracle) << "; lz_scan.csv monotone over "
           << scan.rows.size() << " rows";
}

void invariant_suites(Outcome& o) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_set = [&](int n) {
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) c[k] = 0.05 + 3.0 * u(rng);
    return CouplingSet(c);
  };
  auto random_model = [&] {
    const double chi = 6.0 * u(rng), T = 0.5 + u(rng), d0 = 6.0 * u(rng), b = 6.0 * u(rng);
    switch (static_cast<int>(u(rng) * 6.0)) {
      case 0: return ModelSpec::resonance(chi * 2.0);
      case 1: return ModelSpec::rabi(chi, T, d0);
      case 2: return ModelSpec::landau_zener(chi, 0.2 + b);
      case 3: return ModelSpec::rosen_zener(chi, T, d0);
      case 4: return ModelSpec::allen_eberly(chi, T, b);
      default: return ModelSpec::demkov_kunike(chi, T, d0, b);
    }
  };
  constexpr int kCases = 100;
  struct Suite {
    const char* name;
    int cases = 0;
    double worst = 0.0;
    double tol;
  };
  Suite orth{"W orthogonality", 0, 0, 1e-12}, annih{"dark annihilation", 0, 0, 1e-12},
      drift{"dark constancy", 0, 0, 1e-8}, unit{"unitarity", 0, 0, 1e-12}, ck{"|a|^2+|b|^2", 0, 0, 1e-12},
      ck_ode{"ODE |a|^2+|b|^2", 0, 0, 1e-9}, ratio{"ratio law", 0, 0, 1e-12}, rows{"DO rows", 0, 0, 1e-12};

  for (int k = 0; k < kCases; ++k) {
    const int n = 1 + k % 8;
    const auto chis = random_set(n);
    const auto basis = build_ms_basis(chis);
    orth.worst = std::max(orth.worst, (basis.W.transpose() * basis.W - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff());
    ++orth.cases;
    const auto h = hamiltonian(chis, u(rng), 5.0 * (u(rng) - 0.5));
    for (const auto& d : basis.dark) annih.worst = std::max(annih.worst, (h * d).cwiseAbs().maxCoeff() / chis.rms());
    ++annih.cases;

    const auto model = random_model();
    const auto c = cayley_klein(model);
    ck.worst = std::max(ck.worst, c.unitarity_defect());
    ++ck.cases;
    const auto prop = assemble_propagator(chis, c);
    unit.worst = std::max(unit.worst, (prop.matrix.adjoint() * prop.matrix - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff());
    ++unit.cases;

    const auto wide = random_set(3 + k % 5);
    const auto p = populations(wide, c, 0).probs;
    if (p[2] > 1e-200) {
      const double law = population_ratio(wide, 1, 2, 0);
      ratio.worst = std::max(ratio.worst, std::abs(p[1] / p[2] - law) / law);
    }
    ++ratio.cases;

    std::vector<double> energies(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) energies[static_cast<std::size_t>(m)] = m + u(rng);
    std::sort(energies.begin(), energies.end());
    const DOGrid grid(0.2 + 2.0 * u(rng), chis, energies);
    for (int from = 0; from <= n; ++from) {
      double s = 0.0;
      for (int to = 0; to <= n; ++to) s += do_probability(grid, from, to);
      rows.worst = std::max(rows.worst, std::abs(s - 1.0));
    }
    ++rows.cases;
  }

  // Integration-based suites run in parallel.
  std::vector<double> drift_err(kCases), ode_err(kCases);
  std::vector<CouplingSet> sets;
  std::vector<StateVector> states;
  std::vector<double> widths, offsets;
  std::vector<ModelSpec> models;
  for (int k = 0; k < kCases; ++k) {
    const int n = 2 + k % 5;
    sets.push_back(random_set(n));
    StateVector psi(n + 1);
    for (int m = 0; m <= n; ++m) psi[m] = Complex(u(rng) - 0.5, u(rng) - 0.5);
    states.push_back(psi.normalized());
    widths.push_back(0.5 + u(rng));
    offsets.push_back(4.0 * u(rng));
    ModelSpec m = random_model();
    if (m.kind == ModelKind::LandauZener) m = ModelSpec::rosen_zener(m.chi, 1.0, 1.0);
    models.push_back(m);
  }
  parallel_for(kCases, [&](std::size_t k) {
    const auto& chis = sets[k];
    const auto basis = build_ms_basis(chis);
    IntegrationConfig cfg;
    cfg.t_start = -25.0 * widths[k];
    cfg.t_end = 25.0 * widths[k];
    cfg.max_step = 2.5 * widths[k];
    cfg.samples = 21;
    const auto rec =
        integrate(chis, PulseShape::sech(widths[k]), DetuningProfile::constant(offsets[k]), states[k], cfg);
    double worst = 0.0;
    for (const auto& d : basis.dark) {
      const Complex b0 = d.cast<Complex>().dot(states[k]);
      for (Index r = 0; r < rec.amplitudes.rows(); ++r)
        worst = std::max(worst, std::abs(d.cast<Complex>().dot(rec.amplitudes.row(r).transpose()) - b0));
    }
    drift_err[k] = worst;
    ode_err[k] = oracle_cayley_klein(models[k], default_config(models[k])).unitarity_defect();
  });
  drift.worst = *std::max_element(drift_err.begin(), drift_err.end());
  drift.cases = kCases;
  ck_ode.worst = *std::max_element(ode_err.begin(), ode_err.end());
  ck_ode.cases = kCases;

  bool first = true;
  for (const Suite* s : {&orth, &annih, &drift, &unit, &ck, &ck_ode, &ratio, &rows}) {
    o.require(s->cases >= 100, std::string(s->name) + " has at least 100 cases");
    o.require(s->worst <= s->tol, std::string(s->name) + " within " + sci(s->tol));
    o.detail << (first ? "" : ", ") << s->name << " " << sci(s->worst) << " (" << s->cases << ")";
    first = false;
  }
}

void determinism(Outcome& o, const fs::path& dir) {
  const auto a = write_artifacts((dir / "rerun_a").string());
  const auto b = write_artifacts((dir / "rerun_b").string());
  int identical = 0;
  for (const auto& name : a) {
    const std::string first = slurp(dir / "rerun_a" / name);
    const bool same = !first.empty() && first == slurp(dir / "rerun_b" / name) && first == slurp(dir / name);
    o.require(same, name + " byte-identical");
    identical += same;
  }
  o.require(a == b, "same artifact list");
  o.detail << identical << "/" << a.size() << " artifacts byte-identical across three runs";
}

}  // namespace

std::vector<std::string> write_artifacts(const std::string& dir) {
  fs::create_directories(dir);
  std::vector<std::string> names;
  for (const auto& art : artifacts()) {
    write_csv((fs::path(dir) / art.file).string(), art.make());
    names.push_back(art.file);
  }
  return names;
}

std::vector<CriterionResult> run_acceptance(const std::string& artifact_dir, std::ostream& log) {
  const fs::path dir(artifact_dir);
  write_artifacts(artifact_dir);

  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"Rosen-Zener a = -1 root table", rz_roots},
      {"Rosen-Zener |a|^2 identity", rz_identity},
      {"N=3 resonance propagator entries", propagator_structure},
      {"ODE oracle equivalence", oracle_equivalence},
      {"equal-superposition desk experiments", desk_experiments},
      {"transient suppression", transient_suppression},
      {"degenerate Landau-Zener asymptotics", [&](Outcome& o) { lz_asymptotics(o, dir); }},
      {"invariant suites", invariant_suites},
      {"determinism", [&](Outcome& o) { determinism(o, dir); }},
  };

  std::vector<CriterionResult> results;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    CriterionResult r;
    r.id = static_cast<int>(k + 1);
    r.title = criteria[k].first;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = o.passed;
    r.detail = o.detail.str();
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", r.seconds);
    log << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " -- " << r.detail << " ["
        << time << "]" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace dms::cli
