#include "qinterf/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qinterf {

using nlohmann::json;

std::string_view to_string(ExperimentConfig::Kind kind) {
  using K = ExperimentConfig::Kind;
  switch (kind) {
    case K::hom: return "hom";
    case K::hom_temporal: return "hom_temporal";
    case K::hom_spectral: return "hom_spectral";
    case K::noon: return "noon";
    case K::franson: return "franson";
    case K::fourfold: return "fourfold";
    case K::fock: return "fock";
  }
  return "unknown";
}

namespace {

constexpr double kSpeedOfLight = 299792458.0;

std::string_view to_string(SourceConfig::Kind kind) {
  switch (kind) {
    case SourceConfig::Kind::gaussian: return "gaussian";
    case SourceConfig::Kind::comb: return "comb";
    case SourceConfig::Kind::custom: return "custom";
  }
  return "unknown";
}

}  // namespace

double parse_quantity(const std::string& text, Quantity kind) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || !std::isfinite(v)) throw std::invalid_argument("'" + text + "' is not a number");
  std::string unit(end);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);

  if (kind == Quantity::time) {
    if (unit.empty() || unit == "s") return v;
    if (unit == "ps") return v * 1e-12;
    if (unit == "fs") return v * 1e-15;
    throw std::invalid_argument("unit '" + unit + "' is not a time unit (s, ps, fs)");
  }
  if (unit.empty() || unit == "rad/s") return v;
  if (unit == "THz") return v * kTwoPi * 1e12;
  if (unit == "nm") {
    if (kind != Quantity::center_frequency) throw std::invalid_argument("'nm' is only accepted for center frequencies");
    if (!(v > 0.0)) throw std::invalid_argument("wavelength must be positive");
    return kTwoPi * kSpeedOfLight / (v * 1e-9);
  }
  throw std::invalid_argument("unit '" + unit + "' is not a frequency unit (rad/s, THz" +
                              std::string(kind == Quantity::center_frequency ? ", nm" : "") + ")");
}

namespace {

class Checker {
 public:
  Checker(std::filesystem::path base_dir, bool guards) : base_dir_(std::move(base_dir)), guards_(guards) {}

  void fail(const std::string& key, const std::string& msg) { violations_.push_back(key + ": " + msg); }
  bool guards() const { return guards_; }
  std::vector<std::string> take() { return std::move(violations_); }
  std::size_t count() const { return violations_.size(); }

  std::filesystem::path resolve(const std::string& p) const {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir_.empty() ? base_dir_ / path : path;
  }

  bool object(const json& j, const std::string& key) {
    if (!j.is_object()) {
      fail(key, "must be an object");
      return false;
    }
    return true;
  }

  void known_keys(const json& obj, const std::string& prefix, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) fail(join(prefix, k), "unknown key");
  }

  std::optional<double> quantity(const json& obj, const std::string& prefix, const char* name, Quantity kind,
                                 bool required) {
    const std::string key = join(prefix, name);
    if (!obj.contains(name)) {
      if (required) fail(key, "missing");
      return std::nullopt;
    }
    const json& v = obj.at(name);
    if (v.is_number()) {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        fail(key, "must be finite");
        return std::nullopt;
      }
      return d;
    }
    if (v.is_string()) {
      try {
        return parse_quantity(v.get<std::string>(), kind);
      } catch (const std::invalid_argument& e) {
        fail(key, e.what());
        return std::nullopt;
      }
    }
    fail(key, "must be a number or a quantity string such as \"1.5 THz\"");
    return std::nullopt;
  }

  std::optional<long long> integer(const json& obj, const std::string& prefix, const char* name, bool required) {
    const std::string key = join(prefix, name);
    if (!obj.contains(name)) {
      if (required) fail(key, "missing");
      return std::nullopt;
    }
    const json& v = obj.at(name);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) return static_cast<long long>(d);
    }
    fail(key, "must be an integer");
    return std::nullopt;
  }

  std::optional<std::string> string(const json& obj, const std::string& prefix, const char* name, bool required) {
    const std::string key = join(prefix, name);
    if (!obj.contains(name)) {
      if (required) fail(key, "missing");
      return std::nullopt;
    }
    const json& v = obj.at(name);
    if (!v.is_string()) {
      fail(key, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  static std::string join(const std::string& prefix, const std::string& name) {
    return prefix.empty() ? name : prefix + "." + name;
  }

 private:
  std::filesystem::path base_dir_;
  bool guards_;
  std::vector<std::string> violations_;
};

void check_gaussian_params(Checker& c, const json& j, const std::string& prefix, SourceConfig& s) {
  const auto sp = c.quantity(j, prefix, "sigma_plus", Quantity::frequency, true);
  const auto sm = c.quantity(j, prefix, "sigma_minus", Quantity::frequency, true);
  const auto cs = c.quantity(j, prefix, "center_s", Quantity::center_frequency, true);
  const auto ci = c.quantity(j, prefix, "center_i", Quantity::center_frequency, true);
  const auto pts = c.integer(j, prefix, "points", false);
  const auto hw = c.quantity(j, prefix, "half_width", Quantity::frequency, false);
  if (sp) {
    if (*sp > 0.0) s.sigma_plus = *sp;
    else c.fail(Checker::join(prefix, "sigma_plus"), "must be positive");
  }
  if (sm) {
    if (*sm > 0.0) s.sigma_minus = *sm;
    else c.fail(Checker::join(prefix, "sigma_minus"), "must be positive");
  }
  if (cs) {
    if (*cs > 0.0) s.center_s = *cs;
    else c.fail(Checker::join(prefix, "center_s"), "must be positive");
  }
  if (ci) {
    if (*ci > 0.0) s.center_i = *ci;
    else c.fail(Checker::join(prefix, "center_i"), "must be positive");
  }
  if (pts) {
    if (*pts >= 8 && *pts <= 4096 && is_power_of_two(static_cast<std::size_t>(*pts))) s.points = static_cast<int>(*pts);
    else c.fail(Checker::join(prefix, "points"), "must be a power of two between 8 and 4096");
  }
  if (hw) {
    if (*hw > 0.0) s.half_width = *hw;
    else c.fail(Checker::join(prefix, "half_width"), "must be positive");
  }
  if (c.guards() && s.sigma_plus > 0.0 && s.sigma_minus > 0.0 && s.half_width > 0.0) {
    const double need = 6.0 * gaussian_single_photon_width(s.sigma_plus, s.sigma_minus);
    const Axis a = centered_axis(s.half_width, static_cast<std::size_t>(s.points));
    if (std::min(-a.start(), a.last()) < need * (1.0 - 1e-9))
      c.fail(Checker::join(prefix, "half_width"),
             "grid guard: does not cover 6 single-photon standard deviations (needs " + std::to_string(need) + " rad/s)");
  }
}

std::optional<SourceConfig> check_source(Checker& c, const json& j, const std::string& prefix, bool allow_comb) {
  if (!c.object(j, prefix)) return std::nullopt;
  const std::size_t before = c.count();
  SourceConfig s;
  const auto type = c.string(j, prefix, "type", true);
  if (!type) return std::nullopt;
  if (*type == "gaussian") {
    s.kind = SourceConfig::Kind::gaussian;
    c.known_keys(j, prefix, {"type", "sigma_plus", "sigma_minus", "center_s", "center_i", "points", "half_width"});
    check_gaussian_params(c, j, prefix, s);
  } else if (*type == "custom") {
    s.kind = SourceConfig::Kind::custom;
    c.known_keys(j, prefix, {"type", "path"});
    if (const auto p = c.string(j, prefix, "path", true)) {
      s.path = *p;
      if (!std::filesystem::is_regular_file(c.resolve(*p)))
        c.fail(Checker::join(prefix, "path"), "file '" + c.resolve(*p).string() + "' does not exist");
    }
  } else if (*type == "comb" && allow_comb) {
    s.kind = SourceConfig::Kind::comb;
    c.known_keys(j, prefix, {"type", "base", "modes", "spacing"});
    const std::string bkey = Checker::join(prefix, "base");
    if (!j.contains("base")) {
      c.fail(bkey, "missing");
    } else if (auto base = check_source(c, j.at("base"), bkey, false)) {
      s.sigma_plus = base->sigma_plus;
      s.sigma_minus = base->sigma_minus;
      s.center_s = base->center_s;
      s.center_i = base->center_i;
      s.points = base->points;
      s.half_width = base->half_width;
      s.path = base->path;
    }
    if (const auto m = c.integer(j, prefix, "modes", true)) {
      if (*m >= 1 && *m <= 64) s.modes = static_cast<int>(*m);
      else c.fail(Checker::join(prefix, "modes"), "must be between 1 and 64");
    }
    const auto sp = c.quantity(j, prefix, "spacing", Quantity::frequency, s.modes > 1);
    if (sp) {
      if (*sp > 0.0) s.spacing = *sp;
      else c.fail(Checker::join(prefix, "spacing"), "must be positive");
    }
  } else {
    c.fail(Checker::join(prefix, "type"),
           "unknown source type '" + *type + "' (expected gaussian" + (allow_comb ? ", comb" : "") + " or custom)");
  }
  if (c.count() != before) return std::nullopt;
  return s;
}

std::optional<ExperimentConfig> check_experiment(Checker& c, const json& j) {
  const std::string prefix = "experiment";
  if (!c.object(j, prefix)) return std::nullopt;
  const std::size_t before = c.count();
  ExperimentConfig e;
  const auto type = c.string(j, prefix, "type", true);
  if (!type) return std::nullopt;
  using K = ExperimentConfig::Kind;
  if (*type == "hom" || *type == "noon") {
    e.kind = *type == "hom" ? K::hom : K::noon;
    c.known_keys(j, prefix, {"type"});
  } else if (*type == "hom_temporal") {
    e.kind = K::hom_temporal;
    c.known_keys(j, prefix, {"type", "oversample"});
    if (const auto o = c.integer(j, prefix, "oversample", false)) {
      if (*o >= 1 && *o <= 8 && is_power_of_two(static_cast<std::size_t>(*o))) e.oversample = static_cast<int>(*o);
      else c.fail("experiment.oversample", "must be 1, 2, 4 or 8");
    }
  } else if (*type == "hom_spectral") {
    e.kind = K::hom_spectral;
    c.known_keys(j, prefix, {"type", "tau"});
    if (const auto t = c.quantity(j, prefix, "tau", Quantity::time, true)) e.tau = *t;
  } else if (*type == "franson") {
    e.kind = K::franson;
    c.known_keys(j, prefix, {"type", "base_delay", "t1", "t2"});
    const bool has_base = j.contains("base_delay");
    const bool has_arms = j.contains("t1") || j.contains("t2");
    if (has_base && has_arms) {
      c.fail("experiment.base_delay", "give either base_delay (common delay) or t1 and t2 (independent arms), not both");
    } else if (has_arms) {
      e.franson_independent = true;
      if (const auto t = c.quantity(j, prefix, "t1", Quantity::time, true)) e.t1 = *t;
      if (const auto t = c.quantity(j, prefix, "t2", Quantity::time, true)) e.t2 = *t;
    } else if (const auto t = c.quantity(j, prefix, "base_delay", Quantity::time, false)) {
      e.base_delay = *t;
    }
  } else if (*type == "fourfold") {
    e.kind = K::fourfold;
    c.known_keys(j, prefix, {"type", "source2", "method", "rank"});
    if (!j.contains("source2")) c.fail("experiment.source2", "missing");
    else e.source2 = check_source(c, j.at("source2"), "experiment.source2", true);
    if (const auto m = c.string(j, prefix, "method", false)) {
      if (*m == "direct" || *m == "schmidt") e.method = *m;
      else c.fail("experiment.method", "must be 'direct' or 'schmidt'");
    }
    if (const auto r = c.integer(j, prefix, "rank", false)) {
      if (*r >= 1 && *r <= 4096) e.rank = static_cast<int>(*r);
      else c.fail("experiment.rank", "must be between 1 and 4096");
    }
  } else if (*type == "fock") {
    e.kind = K::fock;
    c.known_keys(j, prefix, {"type", "unitary", "input", "indistinguishability"});
    std::optional<MultiportUnitary> u;
    if (const auto name = c.string(j, prefix, "unitary", false)) e.unitary = *name;
    try {
      u = MultiportUnitary::standard(e.unitary);
    } catch (const std::invalid_argument& err) {
      c.fail("experiment.unitary", err.what());
    }
    if (!j.contains("input")) {
      c.fail("experiment.input", "missing");
    } else if (!j.at("input").is_array()) {
      c.fail("experiment.input", "must be an array of photon numbers");
    } else {
      for (const json& v : j.at("input")) {
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
          c.fail("experiment.input", "entries must be non-negative integers");
          e.input.clear();
          break;
        }
        e.input.push_back(static_cast<int>(v.get<long long>()));
      }
      int total = 0;
      for (int n : e.input) total += n;
      if (u && !e.input.empty() && e.input.size() != u->modes())
        c.fail("experiment.input", "has " + std::to_string(e.input.size()) + " modes but unitary '" + e.unitary +
                                       "' acts on " + std::to_string(u->modes()));
      if (total == 0 && !e.input.empty()) c.fail("experiment.input", "contains no photons");
      if (c.guards() && total > kMaxPhotons)
        c.fail("experiment.input", "photon guard: " + std::to_string(total) + " photons exceed the limit of " +
                                       std::to_string(kMaxPhotons));
    }
    if (j.contains("indistinguishability")) {
      const json& v = j.at("indistinguishability");
      if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
        c.fail("experiment.indistinguishability", "must be a number in [0, 1]");
      } else {
        e.indistinguishability = v.get<double>();
        if (e.indistinguishability < 1.0 &&
            (e.input.size() != 2 || e.input[0] != e.input[1] || (u && u->modes() != 2)))
          c.fail("experiment.indistinguishability",
                 "partial distinguishability needs a two-port unitary and equal photon numbers per port");
      }
    }
  } else {
    c.fail("experiment.type", "unknown experiment '" + *type +
                                  "' (expected hom, hom_temporal, hom_spectral, noon, franson, fourfold or fock)");
  }
  if (c.count() != before) return std::nullopt;
  return e;
}

std::optional<ScanConfig> check_scan(Checker& c, const json& j) {
  if (!c.object(j, "scan")) return std::nullopt;
  const std::size_t before = c.count();
  c.known_keys(j, "scan", {"start", "stop", "points"});
  ScanConfig s;
  const auto a = c.quantity(j, "scan", "start", Quantity::time, true);
  const auto b = c.quantity(j, "scan", "stop", Quantity::time, true);
  const auto n = c.integer(j, "scan", "points", true);
  if (a) s.start = *a;
  if (b) s.stop = *b;
  if (n) {
    if (*n < 2) c.fail("scan.points", "must be at least 2 (got " + std::to_string(*n) + ")");
    else if (*n > 1000000) c.fail("scan.points", "must not exceed 1000000");
    else s.points = static_cast<int>(*n);
  }
  if (a && b && !(s.stop > s.start)) c.fail("scan.stop", "must be greater than scan.start");
  if (c.count() != before) return std::nullopt;
  return s;
}

OutputConfig check_output(Checker& c, const json& j, ExperimentConfig::Kind kind) {
  OutputConfig o;
  if (kind == ExperimentConfig::Kind::fock) o.path = "distribution.csv";
  if (kind == ExperimentConfig::Kind::hom_spectral) o.path = "density.csv";
  if (!c.object(j, "output")) return o;
  c.known_keys(j, "output", {"path", "format"});
  if (const auto p = c.string(j, "output", "path", false)) {
    if (p->empty()) c.fail("output.path", "must not be empty");
    else o.path = *p;
  }
  if (const auto f = c.string(j, "output", "format", false)) {
    if (*f == "csv") o.format = *f;
    else c.fail("output.format", "unsupported format '" + *f + "' (expected csv)");
  }
  return o;
}

void check_guards(Checker& c, const ScenarioConfig& cfg) {
  if (!c.guards() || cfg.experiment.kind != ExperimentConfig::Kind::fourfold || cfg.experiment.method != "direct") return;
  if (!cfg.source || !cfg.experiment.source2) return;
  auto side = [](const SourceConfig& s) { return s.kind == SourceConfig::Kind::custom ? 0.0 : static_cast<double>(s.points); };
  const double n1 = side(*cfg.source);
  const double n2 = side(*cfg.experiment.source2);
  if (n1 > 0.0 && n2 > 0.0 && n1 * n1 * n2 * n2 > kMaxDirectPoints)
    c.fail("experiment.method", "grid guard: direct quadrature on " + std::to_string(static_cast<int>(n1)) + " and " +
                                    std::to_string(static_cast<int>(n2)) + " point grids exceeds 64^4 points");
}

}  // namespace

ConfigReport check_config(const std::string& json_text, const std::filesystem::path& base_dir, bool include_guards) {
  ConfigReport report;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    report.violations.push_back(std::string("config: not valid JSON (") + e.what() + ")");
    return report;
  }
  Checker c(base_dir, include_guards);
  if (!c.object(root, "config")) {
    report.violations = c.take();
    return report;
  }
  c.known_keys(root, "", {"source", "experiment", "scan", "output"});

  ScenarioConfig cfg;
  std::optional<ExperimentConfig> exp;
  if (!root.contains("experiment")) c.fail("experiment", "missing section");
  else exp = check_experiment(c, root.at("experiment"));
  // section requirements follow the declared type even when the section itself has problems
  std::string declared;
  if (root.contains("experiment") && root.at("experiment").is_object()) {
    const json& t = root.at("experiment").value("type", json());
    if (t.is_string()) declared = t.get<std::string>();
  }
  const auto kind = exp ? exp->kind
                        : declared == "fock"           ? ExperimentConfig::Kind::fock
                        : declared == "hom_spectral"   ? ExperimentConfig::Kind::hom_spectral
                                                       : ExperimentConfig::Kind::hom;
  const bool is_fock = kind == ExperimentConfig::Kind::fock;

  if (root.contains("source")) {
    if (is_fock) c.fail("source", "fock experiments take no spectral source");
    else cfg.source = check_source(c, root.at("source"), "source", true);
  } else if (!is_fock) {
    c.fail("source", "missing section");
  }

  const bool wants_scan = !(is_fock || kind == ExperimentConfig::Kind::hom_spectral);
  if (root.contains("scan")) {
    if (!wants_scan) c.fail("scan", "not used by this experiment");
    else cfg.scan = check_scan(c, root.at("scan"));
  } else if (wants_scan) {
    c.fail("scan", "missing section");
  }

  cfg.output = check_output(c, root.contains("output") ? root.at("output") : json::object(), kind);
  if (exp) cfg.experiment = *exp;
  if (c.count() == 0) check_guards(c, cfg);

  report.violations = c.take();
  if (report.violations.empty()) report.config = cfg;
  return report;
}

ScenarioConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  ConfigReport r = check_config(json_text, base_dir, false);
  if (!r.config) throw ConfigError(r.violations.front());
  return *r.config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

namespace {

json source_json(const SourceConfig& s) {
  json j;
  j["type"] = std::string(to_string(s.kind));
  json params;
  if (s.kind == SourceConfig::Kind::custom || (s.kind == SourceConfig::Kind::comb && !s.path.empty())) {
    params = {{"type", "custom"}, {"path", s.path}};
  } else {
    params = {{"type", "gaussian"},  {"sigma_plus", s.sigma_plus}, {"sigma_minus", s.sigma_minus},
              {"center_s", s.center_s}, {"center_i", s.center_i},    {"points", s.points}};
    if (s.half_width > 0.0) params["half_width"] = s.half_width;
  }
  if (s.kind != SourceConfig::Kind::comb) return params;
  j["base"] = params;
  j["modes"] = s.modes;
  if (s.spacing > 0.0) j["spacing"] = s.spacing;
  return j;
}

}  // namespace

std::string config_to_json(const ScenarioConfig& cfg) {
  json j;
  if (cfg.source) j["source"] = source_json(*cfg.source);
  const ExperimentConfig& e = cfg.experiment;
  json x;
  x["type"] = std::string(to_string(e.kind));
  using K = ExperimentConfig::Kind;
  switch (e.kind) {
    case K::hom:
    case K::noon: break;
    case K::hom_temporal: x["oversample"] = e.oversample; break;
    case K::hom_spectral: x["tau"] = e.tau; break;
    case K::franson:
      if (e.franson_independent) {
        x["t1"] = e.t1;
        x["t2"] = e.t2;
      } else {
        x["base_delay"] = e.base_delay;
      }
      break;
    case K::fourfold:
      if (e.source2) x["source2"] = source_json(*e.source2);
      x["method"] = e.method;
      x["rank"] = e.rank;
      break;
    case K::fock:
      x["unitary"] = e.unitary;
      x["input"] = e.input;
      x["indistinguishability"] = e.indistinguishability;
      break;
  }
  j["experiment"] = x;
  if (cfg.scan) j["scan"] = {{"start", cfg.scan->start}, {"stop", cfg.scan->stop}, {"points", cfg.scan->points}};
  j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
  return j.dump(2);
}

JointSpectralAmplitude build_source(const SourceConfig& s, const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  auto base = [&]() {
    if (!s.path.empty()) return load_jsa(resolve(s.path));
    const double hw =
        s.half_width > 0.0 ? s.half_width : 8.0 * gaussian_single_photon_width(s.sigma_plus, s.sigma_minus);
    const Axis axis = centered_axis(hw, static_cast<std::size_t>(s.points));
    return gaussian_jsa(s.sigma_plus, s.sigma_minus, s.center_s, s.center_i, axis, axis);
  };
  if (s.kind != SourceConfig::Kind::comb) return base();
  return comb_jsa(base(), s.modes, s.spacing).jsa;
}

namespace {

void describe_source(const SourceConfig& s, const JointSpectralAmplitude& jsa, const std::string& tag,
                     ScenarioResult& r) {
  r.derived["purity" + tag] = schmidt_analysis(jsa).purity;
  if (s.kind == SourceConfig::Kind::custom) r.derived["renormalization" + tag] = jsa.renormalization();
}

JointSpectralAmplitude make_source(const SourceConfig& s, const std::filesystem::path& base_dir, const std::string& tag,
                                   ScenarioResult& r) {
  if (s.kind == SourceConfig::Kind::comb) {
    SourceConfig b = s;
    b.kind = s.path.empty() ? SourceConfig::Kind::gaussian : SourceConfig::Kind::custom;
    const CombJsa comb = comb_jsa(build_source(b, base_dir), s.modes, s.spacing);
    r.derived["max_mode_overlap" + tag] = comb.max_mode_overlap;
    if (comb.modes_overlap)
      r.warnings.push_back("comb modes overlap (max overlap " + std::to_string(comb.max_mode_overlap) +
                           "); they are not orthogonal");
    describe_source(s, comb.jsa, tag, r);
    return comb.jsa;
  }
  JointSpectralAmplitude jsa = build_source(s, base_dir);
  describe_source(s, jsa, tag, r);
  return jsa;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& base_dir) {
  ScenarioResult r;
  const ExperimentConfig& e = cfg.experiment;
  using K = ExperimentConfig::Kind;

  if (e.kind == K::fock) {
    const MultiportUnitary u = MultiportUnitary::standard(e.unitary);
    const ModeOccupation in(e.input);
    FockDistribution d = e.indistinguishability < 1.0
                             ? delayed_pair_distribution(e.input.at(0), e.indistinguishability, u)
                             : evolve(in, u);
    r.derived["photons"] = in.total();
    r.derived["total_probability"] = d.total();
    r.distribution = std::move(d);
    return r;
  }

  if (!cfg.source) throw ConfigError("source: missing section");
  const JointSpectralAmplitude jsa = make_source(*cfg.source, base_dir, "", r);

  if (e.kind == K::hom_spectral) {
    RealGrid2 d = spectrally_resolved_hom(jsa, e.tau);
    r.derived["probability"] = integrate2(d);
    r.spectral_density = std::move(d);
    return r;
  }

  if (!cfg.scan) throw ConfigError("scan: missing section");
  const Axis tau = linspace(cfg.scan->start, cfg.scan->stop, static_cast<std::size_t>(cfg.scan->points));
  try {
    switch (e.kind) {
      case K::hom: r.pattern = hom_pattern(jsa, tau); break;
      case K::hom_temporal: r.pattern = hom_pattern_temporal(to_temporal(jsa, e.oversample), tau); break;
      case K::noon: r.pattern = noon_pattern(jsa, tau); break;
      case K::franson: {
        const FransonDelays delays =
            e.franson_independent ? FransonDelays::independent(e.t1, e.t2) : FransonDelays::common(e.base_delay);
        r.pattern = franson_pattern(jsa, tau, delays);
        break;
      }
      case K::fourfold: {
        if (!e.source2) throw ConfigError("experiment.source2: missing");
        const JointSpectralAmplitude jsa2 = make_source(*e.source2, base_dir, "_2", r);
        const SourcePair pair(jsa, jsa2);
        const FourfoldMethod method =
            e.method == "direct" ? FourfoldMethod::direct() : FourfoldMethod::schmidt(e.rank);
        FourfoldResult res = fourfold_pattern(pair, tau, method);
        r.derived["truncation_weight"] = res.truncation_weight;
        r.derived["fourfold_visibility"] = fourfold_visibility(pair, method);
        r.pattern = std::move(res.pattern);
        break;
      }
      default: break;
    }
  } catch (const GuardViolation&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("experiment: ") + err.what());
  }
  r.derived["baseline"] = r.pattern->baseline();
  r.derived["visibility"] =
      e.kind == K::fourfold ? r.derived.at("fourfold_visibility") : r.pattern->visibility();
  if (e.kind == K::fourfold) r.derived["scan_visibility"] = r.pattern->visibility();
  return r;
}

}  // namespace qinterf
