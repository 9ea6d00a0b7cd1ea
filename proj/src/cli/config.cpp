#include "dms/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dms::cli {

namespace {

using nlohmann::json;

// Collects schema problems so a single run reports all of them.
class Checker {
 public:
  void fail(const std::string& path, const std::string& message) { errors_.push_back(path + ": " + message); }

  void allow_only(const json& obj, const std::string& path, const std::set<std::string>& keys) {
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (!keys.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path, bool required) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) {
      if (required) fail(where, "missing required number");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(where, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(where, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<long> integer(const json& obj, const std::string& key, const std::string& path, bool required) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) {
      if (required) fail(where, "missing required integer");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(where, "expected an integer");
      return std::nullopt;
    }
    return v.get<long>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path, bool required) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) {
      if (required) fail(where, "missing required string");
      return std::nullopt;
    }
    if (!obj.at(key).is_string()) {
      fail(where, "expected a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  bool object(const json& doc, const std::string& key, bool required) {
    if (!doc.contains(key)) {
      if (required) fail(key, "missing required object");
      return false;
    }
    if (!doc.at(key).is_object()) {
      fail(key, "expected an object");
      return false;
    }
    return true;
  }

  void finish() const {
    if (errors_.empty()) return;
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& e : errors_) os << "\n  " << e;
    throw ConfigError(os.str());
  }

  bool ok() const { return errors_.empty(); }

 private:
  std::vector<std::string> errors_;
};

std::optional<ModelKind> model_kind(const std::string& name) {
  for (auto kind : {ModelKind::Resonance, ModelKind::Rabi, ModelKind::LandauZener, ModelKind::RosenZener,
                    ModelKind::AllenEberly, ModelKind::DemkovKunike})
    if (name == to_string(kind)) return kind;
  return std::nullopt;
}

std::optional<DesignTarget::Kind> target_kind(const std::string& name) {
  using K = DesignTarget::Kind;
  for (auto kind : {K::EqualAllFromGround, K::EqualAllExceptInitial, K::EqualAllFromExcited})
    if (name == to_string(kind)) return kind;
  return std::nullopt;
}

// Keys each model accepts (besides "kind"), and which of them are required.
struct ModelKeys {
  std::set<std::string> allowed;
  std::set<std::string> required;
};

ModelKeys model_keys(ModelKind kind) {
  switch (kind) {
    case ModelKind::Resonance: return {{"area", "T", "shape"}, {"area"}};
    case ModelKind::Rabi: return {{"chi", "T", "delta0"}, {"chi", "T"}};
    case ModelKind::LandauZener: return {{"chi", "chirp"}, {"chi", "chirp"}};
    case ModelKind::RosenZener: return {{"chi", "T", "delta0"}, {"chi", "T"}};
    case ModelKind::AllenEberly: return {{"chi", "T", "sweep"}, {"chi", "T", "sweep"}};
    case ModelKind::DemkovKunike: return {{"chi", "T", "delta0", "sweep"}, {"chi", "T", "sweep"}};
  }
  return {};
}

std::optional<ModelSpec> parse_model(Checker& c, const json& m) {
  const auto name = c.string(m, "kind", "model", true);
  if (!name) return std::nullopt;
  const auto kind = model_kind(*name);
  if (!kind) {
    c.fail("model.kind", "unknown model '" + *name + "'");
    return std::nullopt;
  }
  const auto keys = model_keys(*kind);
  auto allowed = keys.allowed;
  allowed.insert("kind");
  c.allow_only(m, "model", allowed);
  auto get = [&](const char* key, double fallback) {
    if (!keys.allowed.count(key)) return fallback;
    return c.number(m, key, "model", keys.required.count(key) > 0).value_or(fallback);
  };
  const double chi = get("chi", 0.0), T = get("T", 1.0), delta0 = get("delta0", 0.0), sweep = get("sweep", 0.0),
               chirp = get("chirp", 1.0), area = get("area", 0.0);
  if (!c.ok()) return std::nullopt;

  try {
    switch (*kind) {
      case ModelKind::Resonance: {
        const std::string shape = c.string(m, "shape", "model", false).value_or("sech");
        if (T <= 0.0) throw std::invalid_argument("T must be positive");
        if (shape == "sech") return ModelSpec::resonance(area, PulseShape::sech(T));
        if (shape == "rect") return ModelSpec::resonance(area, PulseShape::rect(T));
        c.fail("model.shape", "expected 'sech' or 'rect'");
        return std::nullopt;
      }
      case ModelKind::Rabi: return ModelSpec::rabi(chi, T, delta0);
      case ModelKind::LandauZener: return ModelSpec::landau_zener(chi, chirp);
      case ModelKind::RosenZener: return ModelSpec::rosen_zener(chi, T, delta0);
      case ModelKind::AllenEberly: return ModelSpec::allen_eberly(chi, T, sweep);
      case ModelKind::DemkovKunike: return ModelSpec::demkov_kunike(chi, T, delta0, sweep);
    }
  } catch (const std::invalid_argument& e) {
    c.fail("model", e.what());
  }
  return std::nullopt;
}

std::optional<DesignTarget> parse_target(Checker& c, const json& obj, const std::string& path, const char* name_key,
                                         Index initial) {
  const auto name = c.string(obj, name_key, path, true);
  const auto n = c.integer(obj, "N", path, true);
  const auto branch = c.integer(obj, "branch", path, false);
  if (!name || !n) return std::nullopt;
  const auto kind = target_kind(*name);
  if (!kind) {
    c.fail(path.empty() ? name_key : path + "." + name_key, "unknown target '" + *name + "'");
    return std::nullopt;
  }
  if (*n < 1 || *n > 1000) {
    c.fail(path.empty() ? "N" : path + ".N", "must lie in [1, 1000]");
    return std::nullopt;
  }
  DesignTarget t{*kind, static_cast<Index>(*n), initial, static_cast<int>(branch.value_or(1))};
  if (t.kind == DesignTarget::Kind::EqualAllFromExcited) t.initial = 0;
  return t;
}

const std::set<std::string> kScanKeys{"variable", "from", "to", "points"};

const char* scan_variable(Command command) {
  switch (command) {
    case Command::ScanDetuning: return "delta0T";
    case Command::ScanArea: return "rms_area";
    case Command::Evolve: return "t_over_T";
    case Command::LzScan: return "Lambda";
    default: return "";
  }
}

void parse_tolerances(Checker& c, const json& doc, Tolerances& tol) {
  if (!c.object(doc, "tolerances", false)) return;
  const json& t = doc.at("tolerances");
  c.allow_only(t, "tolerances", {"rel_tol", "abs_tol", "design", "lz_window_factor"});
  auto in_range = [&](const char* key, double lo, double hi, double& out) {
    if (auto v = c.number(t, key, "tolerances", false)) {
      if (*v > lo && *v <= hi)
        out = *v;
      else
        c.fail(std::string("tolerances.") + key, "out of range");
    }
  };
  in_range("rel_tol", 0.0, 1e-3, tol.rel_tol);
  in_range("abs_tol", 0.0, 1e-3, tol.abs_tol);
  in_range("design", 0.0, 1.0, tol.design);
  in_range("lz_window_factor", 1.0, 1e4, tol.lz_window_factor);
}

void parse_design_command(Checker& c, const json& doc, RunConfig& cfg) {
  c.allow_only(doc, "", {"target", "N", "initial", "branch", "l", "chi", "chi_T", "output", "tolerances"});
  const long initial = c.integer(doc, "initial", "", false).value_or(1);
  cfg.target = parse_target(c, doc, "", "target", static_cast<Index>(initial - 1));
  cfg.l = static_cast<int>(c.integer(doc, "l", "", false).value_or(0));
  if (cfg.l < 0) c.fail("l", "must be nonnegative");
  if (auto chi_t = c.number(doc, "chi_T", "", false)) {
    if (*chi_t <= 0.0)
      c.fail("chi_T", "must be positive");
    else
      cfg.chi_T = *chi_t;
  }
  if (auto chi = c.number(doc, "chi", "", false)) {
    if (*chi <= 0.0)
      c.fail("chi", "must be positive");
    else
      cfg.chi = *chi;
  }
}

}  // namespace

const char* to_string(Command command) {
  switch (command) {
    case Command::ScanDetuning: return "scan-detuning";
    case Command::ScanArea: return "scan-area";
    case Command::Evolve: return "evolve";
    case Command::LzScan: return "lz-scan";
    case Command::Design: return "design";
    case Command::Verify: return "verify";
  }
  return "?";
}

std::optional<Command> command_from_string(const std::string& name) {
  for (auto c : {Command::ScanDetuning, Command::ScanArea, Command::Evolve, Command::LzScan, Command::Design,
                 Command::Verify})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

std::vector<double> ScanSpec::grid() const {
  if (from == to || points == 1) return {from};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = from + (to - from) * k / (points - 1);
  g.back() = to;
  return g;
}

RunConfig parse_config(Command command, const nlohmann::json& document) {
  Checker c;
  if (!document.is_object()) throw ConfigError("invalid configuration:\n  top level must be a JSON object");

  RunConfig cfg;
  cfg.command = command;
  cfg.document = document;
  cfg.document.erase("output");
  if (auto out = c.string(document, "output", "", false)) cfg.output = *out;
  parse_tolerances(c, document, cfg.tolerances);

  if (command == Command::Design) {
    parse_design_command(c, document, cfg);
    c.finish();
    return cfg;
  }
  if (command == Command::Verify) {
    c.allow_only(document, "", {"output"});
    c.finish();
    return cfg;
  }

  c.allow_only(document, "", {"model", "couplings", "scan", "initial", "output", "tolerances"});
  if (c.object(document, "model", true)) {
    if (auto m = parse_model(c, document.at("model"))) cfg.model = *m;
  }

  const long initial = c.integer(document, "initial", "", false).value_or(1);
  cfg.initial = static_cast<Index>(initial - 1);

  if (!document.contains("couplings")) {
    c.fail("couplings", "missing: give an array of couplings or a design object");
  } else if (const json& cp = document.at("couplings"); cp.is_array()) {
    std::vector<double> values;
    for (std::size_t k = 0; k < cp.size(); ++k) {
      if (!cp[k].is_number() || !std::isfinite(cp[k].get<double>()) || cp[k].get<double>() < 0.0)
        c.fail("couplings[" + std::to_string(k) + "]", "expected a finite nonnegative number");
      else
        values.push_back(cp[k].get<double>());
    }
    if (cp.empty()) c.fail("couplings", "need at least one coupling");
    if (c.ok()) {
      if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; }))
        c.fail("couplings", "at least one coupling must be nonzero");
      else
        cfg.couplings = CouplingSet(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size())));
    }
  } else if (cp.is_object()) {
    c.allow_only(cp, "couplings", {"design", "N", "branch"});
    cfg.coupling_design = parse_target(c, cp, "couplings", "design", cfg.initial);
    if (cfg.coupling_design && c.ok()) {
      try {
        cfg.coupling_design->validate();
        cfg.couplings = design_couplings(*cfg.coupling_design, 1.0);
      } catch (const DesignError& e) {
        c.fail("couplings", e.what());
      }
    }
  } else {
    c.fail("couplings", "expected an array or an object");
  }
  if (c.ok() && (cfg.initial < 0 || cfg.initial > cfg.couplings.size()))
    c.fail("initial", "must lie in [1, N+1]");

  const std::string variable = scan_variable(command);
  if (c.object(document, "scan", command != Command::Evolve)) {
    const json& s = document.at("scan");
    c.allow_only(s, "scan", kScanKeys);
    ScanSpec scan;
    scan.variable = c.string(s, "variable", "scan", false).value_or(variable);
    if (scan.variable != variable && !(command == Command::ScanArea && scan.variable == "chiT"))
      c.fail("scan.variable", "expected '" + variable + "' for " + to_string(command));
    scan.from = c.number(s, "from", "scan", true).value_or(0.0);
    scan.to = c.number(s, "to", "scan", true).value_or(0.0);
    scan.points = static_cast<int>(c.integer(s, "points", "scan", false).value_or(101));
    if (scan.to < scan.from) c.fail("scan", "'to' must not be below 'from'");
    if (scan.points < 1 || scan.points > 1000000) c.fail("scan.points", "must lie in [1, 1000000]");
    cfg.scan = scan;
  }
  c.finish();

  switch (command) {
    case Command::ScanDetuning:
      if (cfg.model.kind != ModelKind::RosenZener && cfg.model.kind != ModelKind::DemkovKunike)
        c.fail("model.kind", "scan-detuning needs rosen_zener or demkov_kunike");
      if (cfg.scan->from < 0.0) c.fail("scan.from", "detuning must be nonnegative");
      break;
    case Command::ScanArea:
      if (cfg.model.kind == ModelKind::LandauZener) c.fail("model.kind", "pulse area undefined for landau_zener");
      if (cfg.scan->from < 0.0) c.fail("scan.from", "area must be nonnegative");
      break;
    case Command::LzScan:
      if (cfg.model.kind != ModelKind::LandauZener) c.fail("model.kind", "lz-scan needs landau_zener");
      if (cfg.scan->from < 0.0) c.fail("scan.from", "Lambda must be nonnegative");
      if (cfg.couplings.size() < 2) c.fail("couplings", "lz-scan needs at least two ground states");
      if (cfg.initial == cfg.couplings.size()) c.fail("initial", "lz-scan starts in a ground state");
      break;
    default:
      break;
  }
  c.finish();
  return cfg;
}

RunConfig parse_config(Command command, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(command, doc);
}

RunConfig load_config(Command command, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(command, text.str());
}

}  // namespace dms::cli
