#include "dms/cli/commands.hpp"

#include "dms/cli/acceptance.hpp"
#include "dms/cli/parallel.hpp"
#include "dms/dynamics.hpp"
#include "dms/models.hpp"
#include "dms/propagator.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

namespace dms::cli {

namespace {

using nlohmann::json;
using std::numbers::pi;

std::vector<std::string> header(const RunConfig& cfg) {
  return {kVersion, std::string("command: ") + to_string(cfg.command), "config: " + cfg.document.dump()};
}

std::vector<std::string> population_columns(Index dim, const char* suffix = "") {
  std::vector<std::string> cols;
  for (Index k = 1; k <= dim; ++k) cols.push_back("P_" + std::to_string(k) + suffix);
  return cols;
}

IntegrationConfig integration_config(const RunConfig& cfg, const ModelSpec& model) {
  IntegrationConfig ic = default_config(model, cfg.tolerances.lz_window_factor);
  ic.rel_tol = cfg.tolerances.rel_tol;
  ic.abs_tol = cfg.tolerances.abs_tol;
  return ic;
}

Eigen::VectorXd analytic_populations(const RunConfig& cfg, const ModelSpec& model) {
  return populations(cfg.couplings, cayley_klein(model), cfg.initial).probs;
}

Eigen::VectorXd ode_populations(const RunConfig& cfg, const ModelSpec& model) {
  const auto chis = cfg.couplings.scaled_to(model.peak_coupling());
  return integrate(chis, model.pulse(), model.detuning(), basis_state(chis.size() + 1, cfg.initial),
                   integration_config(cfg, model))
      .final_populations();
}

void append(std::vector<double>& row, const Eigen::VectorXd& v) { row.insert(row.end(), v.data(), v.data() + v.size()); }

// Evaluates row(x) over the scan grid in parallel; rows keep grid order.
template <typename RowFn>
std::vector<std::vector<double>> scan_rows(const ScanSpec& scan, RowFn&& row) {
  const auto grid = scan.grid();
  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { rows[k] = row(grid[k]); });
  return rows;
}

ModelSpec with_detuning(const ModelSpec& m, double delta0) {
  if (m.kind == ModelKind::DemkovKunike) return ModelSpec::demkov_kunike(m.chi, m.T, delta0, m.sweep);
  return ModelSpec::rosen_zener(m.chi, m.T, delta0);
}

ModelSpec with_area(const ModelSpec& m, double area) {
  switch (m.kind) {
    case ModelKind::Resonance: return ModelSpec::resonance(area, m.shape);
    case ModelKind::Rabi: return ModelSpec::rabi(area / (2.0 * m.T), m.T, m.delta0);
    case ModelKind::RosenZener: return ModelSpec::rosen_zener(area / (pi * m.T), m.T, m.delta0);
    case ModelKind::AllenEberly: return ModelSpec::allen_eberly(area / (pi * m.T), m.T, m.sweep);
    case ModelKind::DemkovKunike: return ModelSpec::demkov_kunike(area / (pi * m.T), m.T, m.delta0, m.sweep);
    case ModelKind::LandauZener: break;
  }
  throw ConfigError("pulse area undefined for landau_zener");
}

Eigen::VectorXd target_populations(const RunConfig& cfg) {
  if (cfg.coupling_design) return cfg.coupling_design->populations();
  const Index n = cfg.couplings.size();
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n + 1, 1.0 / static_cast<double>(n));
  p[n] = 0.0;
  return p;
}

void write_output(const RunConfig& cfg, const CsvTable& table) {
  if (cfg.output.empty())
    write_csv(std::cout, table);
  else
    write_csv(cfg.output, table);
}

json to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json check_json(const DesignCheck& check) {
  return {{"passed", check.passed}, {"max_deviation", check.max_deviation}, {"populations", to_json(check.populations.probs)}};
}

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

}  // namespace

CsvTable scan_detuning(const RunConfig& cfg) {
  const Index dim = cfg.couplings.size() + 1;
  CsvTable t;
  t.header_comments = header(cfg);
  t.columns = {"delta0T"};
  for (auto& c : population_columns(dim)) t.columns.push_back(c);
  if (cfg.oracle)
    for (auto& c : population_columns(dim, "_ode")) t.columns.push_back(c);
  t.rows = scan_rows(*cfg.scan, [&](double x) {
    const ModelSpec model = with_detuning(cfg.model, x / cfg.model.T);
    std::vector<double> row{x};
    append(row, analytic_populations(cfg, model));
    if (cfg.oracle) append(row, ode_populations(cfg, model));
    return row;
  });
  return t;
}

CsvTable scan_area(const RunConfig& cfg) {
  const Index dim = cfg.couplings.size() + 1;
  const bool by_chi = cfg.scan->variable == "chiT";
  const Eigen::VectorXd target = target_populations(cfg);
  CsvTable t;
  t.header_comments = header(cfg);
  t.columns = {cfg.scan->variable};
  for (auto& c : population_columns(dim)) t.columns.push_back(c);
  t.columns.push_back("deviation");
  if (cfg.oracle)
    for (auto& c : population_columns(dim, "_ode")) t.columns.push_back(c);
  t.rows = scan_rows(*cfg.scan, [&](double x) {
    ModelSpec model = cfg.model;
    if (by_chi) {
      if (model.kind == ModelKind::Resonance) throw ConfigError("scan.variable: use rms_area for resonance");
      model = with_area(model, x / model.T * model.pulse().area());
    } else {
      model = with_area(model, x);
    }
    std::vector<double> row{x};
    const Eigen::VectorXd p = analytic_populations(cfg, model);
    append(row, p);
    row.push_back((p - target).cwiseAbs().maxCoeff());
    if (cfg.oracle) append(row, ode_populations(cfg, model));
    return row;
  });
  return t;
}

CsvTable evolve(const RunConfig& cfg) {
  const ModelSpec& model = cfg.model;
  const Index dim = cfg.couplings.size() + 1;
  IntegrationConfig ic = integration_config(cfg, model);
  const double T = model.kind == ModelKind::Resonance ? model.shape.width() : model.T;
  ScanSpec scan = cfg.scan.value_or(ScanSpec{"t_over_T", ic.t_start / T, ic.t_end / T, 201});
  for (double x : scan.grid()) ic.sample_times.push_back(x * T);
  ic.t_start = std::min(ic.t_start, ic.sample_times.front());
  ic.t_end = std::max(ic.t_end, ic.sample_times.back());
  if (ic.t_start == ic.t_end) ic.t_end = ic.t_start + T;

  const auto chis = cfg.couplings.scaled_to(model.peak_coupling());
  const auto rec = integrate(chis, model.pulse(), model.detuning(), basis_state(dim, cfg.initial), ic);

  CsvTable t;
  t.header_comments = header(cfg);
  t.columns = {"t_over_T"};
  for (auto& c : population_columns(dim)) t.columns.push_back(c);
  const auto grid = scan.grid();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::vector<double> row{grid[r]};
    append(row, rec.populations.row(static_cast<Index>(r)).transpose());
    t.rows.push_back(std::move(row));
  }
  t.footer_comments = {"peak_excited=" + format_number(rec.peak_excited),
                       "final=" + [&] {
                         std::string s;
                         const auto p = rec.final_populations();
                         for (Index k = 0; k < p.size(); ++k) s += (k ? "," : "") + format_number(p[k]);
                         return s;
                       }()};
  return t;
}

CsvTable lz_scan(const RunConfig& cfg) {
  const Index n = cfg.couplings.size();
  const Index i = cfg.initial;
  const Index other = i == 0 ? 1 : 0;
  const std::vector<Index> picks{i, other, n};
  CsvTable t;
  t.header_comments = header(cfg);
  t.columns = {"Lambda"};
  for (Index k : picks) t.columns.push_back("P_" + std::to_string(k + 1));
  if (cfg.oracle)
    for (Index k : picks) t.columns.push_back("P_" + std::to_string(k + 1) + "_ode");
  const double chirp = cfg.model.chirp;
  t.rows = scan_rows(*cfg.scan, [&](double lambda) {
    std::vector<double> row{lambda};
    const auto p = lz_populations(cfg.couplings, lambda, i).probs;
    for (Index k : picks) row.push_back(p[k]);
    if (cfg.oracle) {
      const auto q = ode_populations(cfg, ModelSpec::landau_zener(std::sqrt(4.0 * lambda * chirp / pi), chirp));
      for (Index k : picks) row.push_back(q[k]);
    }
    return row;
  });
  return t;
}

DesignReport design(const RunConfig& cfg) {
  const DesignTarget target = *cfg.target;
  target.validate();
  const double tol = cfg.tolerances.design;
  const bool excited = target.kind == DesignTarget::Kind::EqualAllFromExcited;
  const auto chis = design_couplings(target, cfg.chi);
  const auto areas = resonance_areas(target, cfg.l);

  DesignReport rep;
  json& j = rep.json;
  j["version"] = kVersion;
  j["target"] = to_string(target.kind);
  j["N"] = target.n_states;
  if (!excited) j["initial"] = target.initial + 1;
  if (target.kind == DesignTarget::Kind::EqualAllFromGround) j["branch"] = target.branch;
  j["required_a"] = target.required_a();
  j["chi"] = cfg.chi;
  j["couplings"] = to_json(chis.values());
  j["target_populations"] = to_json(target.populations());

  const CouplingSet area_set(areas);
  const auto res_check = verify_design(target, area_set, cayley_klein(ModelSpec::resonance(area_set.rms())), tol);
  rep.passed = rep.passed && res_check.passed;
  j["resonance"] = {{"l", cfg.l}, {"areas", to_json(areas)}, {"rms_area", area_set.rms()}, {"verify", check_json(res_check)}};

  json menu = json::array();
  if (excited) {
    // a = 0 needs Delta0 = 0 and chi T an odd integer.
    const double chi_t = cfg.chi_T.value_or(2.0 * cfg.l + 1.0);
    if (!is_integer(chi_t) || static_cast<long>(chi_t) % 2 == 0)
      throw DesignError("chi_T must be an odd integer for an a = 0 Rosen-Zener pulse");
    const auto check = verify_design(target, chis, cayley_klein(ModelSpec::rosen_zener(chi_t, 1.0, 0.0)), tol);
    rep.passed = rep.passed && check.passed;
    menu.push_back({{"chi_T", chi_t}, {"delta0_T", json::array({0.0})}, {"verify", json::array({check_json(check)})}});
  } else {
    int lo = 1, hi = 15;
    if (cfg.chi_T) {
      const double chi_t = *cfg.chi_T;
      if (!is_integer(chi_t) || static_cast<long>(chi_t) % 2 != 0 || chi_t < 2 || chi_t > 30)
        throw DesignError("chi_T must be an even integer in [2, 30] for an a = -1 Rosen-Zener pulse");
      lo = hi = static_cast<int>(chi_t) / 2;
    }
    for (int l = lo; l <= hi; ++l) {
      const auto report = rz_minus_one_detunings(l);
      json roots = json::array(), checks = json::array();
      for (const auto& root : report.roots) {
        roots.push_back(root.delta0_T);
        const auto check =
            verify_design(target, chis, cayley_klein(ModelSpec::rosen_zener(2.0 * l, 1.0, root.delta0_T)), tol);
        rep.passed = rep.passed && check.passed;
        checks.push_back(check_json(check));
      }
      menu.push_back({{"chi_T", 2 * l}, {"delta0_T", roots}, {"verify", checks}});
    }
  }
  j["rosen_zener"] = menu;
  j["passed"] = rep.passed;
  return rep;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Degenerate multistate excitation: analytic propagators, ODE oracle and design tools", "dms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path, output;
  bool oracle = false;
  int points = 0;
  std::vector<std::pair<Command, CLI::App*>> subs;
  auto add = [&](Command c, const char* help, bool scans) {
    CLI::App* sub = app.add_subcommand(to_string(c), help);
    if (c != Command::Verify) sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--output", output, c == Command::Verify ? "artifact directory" : "output file (default stdout)");
    if (scans) {
      sub->add_flag("--oracle", oracle, "add ODE oracle columns");
      sub->add_option("--points", points, "override scan.points")->check(CLI::PositiveNumber);
    }
    subs.emplace_back(c, sub);
  };
  add(Command::ScanDetuning, "final populations against the detuning", true);
  add(Command::ScanArea, "final populations against the rms pulse area", true);
  add(Command::Evolve, "populations against time", false);
  add(Command::LzScan, "degenerate Landau-Zener populations against Lambda", true);
  add(Command::Design, "couplings, areas and detunings for a target superposition", false);
  add(Command::Verify, "run the acceptance suite and write artifacts", false);
  if (auto* ev = subs[2].second) ev->add_option("--points", points, "override scan.points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Command command = Command::Verify;
  for (auto& [c, sub] : subs)
    if (sub->parsed()) command = c;

  try {
    if (command == Command::Verify) {
      const auto results = run_acceptance(output.empty() ? "artifacts" : output, std::cout);
      for (const auto& r : results)
        if (!r.passed) return 1;
      return 0;
    }

    RunConfig cfg = load_config(command, config_path);
    if (!output.empty()) cfg.output = output;
    cfg.oracle = oracle;
    if (points > 0) {
      if (!cfg.scan && command == Command::Evolve) {
        const ModelSpec& m = cfg.model;
        const auto ic = default_config(m, cfg.tolerances.lz_window_factor);
        const double T = m.kind == ModelKind::Resonance ? m.shape.width() : m.T;
        cfg.scan = ScanSpec{"t_over_T", ic.t_start / T, ic.t_end / T, points};
      } else if (cfg.scan) {
        cfg.scan->points = points;
      }
      if (cfg.scan) cfg.document["scan"]["points"] = cfg.scan->points;
    }

    switch (command) {
      case Command::ScanDetuning: write_output(cfg, scan_detuning(cfg)); break;
      case Command::ScanArea: write_output(cfg, scan_area(cfg)); break;
      case Command::Evolve: write_output(cfg, evolve(cfg)); break;
      case Command::LzScan: write_output(cfg, lz_scan(cfg)); break;
      case Command::Design: {
        const auto rep = design(cfg);
        const std::string text = rep.json.dump(2) + "\n";
        if (cfg.output.empty()) {
          std::cout << text;
        } else {
          std::ofstream out(cfg.output, std::ios::binary);
          if (!out) throw ConfigError("cannot write '" + cfg.output + "'");
          out << text;
        }
        if (!rep.passed) {
          std::cerr << "dms: design verification failed\n";
          return 4;
        }
        break;
      }
      case Command::Verify: break;
    }
  } catch (const ConfigError& e) {
    std::cerr << "dms: " << e.what() << '\n';
    return 2;
  } catch (const DesignError& e) {
    std::cerr << "dms: design failure: " << e.what() << '\n';
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "dms: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dms: invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dms: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

unsigned worker_count() {
  if (const char* env = std::getenv("DMS_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace dms::cli
