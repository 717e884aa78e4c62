#include "qinterf/output.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef QINTERF_VERSION
#define QINTERF_VERSION "0.0.0"
#endif

namespace qinterf {

std::string_view library_version() { return QINTERF_VERSION; }

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_pattern_csv(std::ostream& out, const InterferencePattern& p) {
  out << "# kind=" << to_string(p.kind()) << " baseline=" << num(p.baseline()) << " visibility=" << num(p.visibility())
      << '\n';
  out << "delay,probability\n";
  for (std::size_t k = 0; k < p.values().size(); ++k) out << num(p.axis().value(k)) << ',' << num(p.values()[k]) << '\n';
}

InterferencePattern read_pattern_csv(std::istream& in) {
  std::string line;
  std::string kind_name;
  double baseline = std::nan("");
  std::vector<double> delays, values;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream ss(line.substr(1));
      for (std::string tok; ss >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "kind") kind_name = val;
        if (key == "baseline") baseline = std::strtod(val.c_str(), nullptr);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "delay,probability")
        throw std::invalid_argument("pattern csv line " + std::to_string(lineno) + ": expected header 'delay,probability'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("pattern csv line " + std::to_string(lineno) + ": missing comma");
    char* end = nullptr;
    const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
    const double d = std::strtod(a.c_str(), &end);
    if (end == a.c_str() || *end != '\0') throw std::invalid_argument("pattern csv line " + std::to_string(lineno) + ": bad delay");
    const double v = std::strtod(b.c_str(), &end);
    if (end == b.c_str() || *end != '\0') throw std::invalid_argument("pattern csv line " + std::to_string(lineno) + ": bad probability");
    delays.push_back(d);
    values.push_back(v);
  }
  if (kind_name.empty()) throw std::invalid_argument("pattern csv: missing '# kind=' comment");
  if (!std::isfinite(baseline)) throw std::invalid_argument("pattern csv: missing or invalid baseline");
  if (delays.size() < 2) throw std::invalid_argument("pattern csv: needs at least two rows");
  const double step = (delays.back() - delays.front()) / static_cast<double>(delays.size() - 1);
  for (std::size_t k = 0; k < delays.size(); ++k)
    if (std::abs(delays[k] - (delays.front() + static_cast<double>(k) * step)) > 1e-6 * std::abs(step))
      throw std::invalid_argument("pattern csv: delays are not uniformly spaced");
  return InterferencePattern(Axis(delays.front(), step, delays.size()), std::move(values),
                             pattern_kind_from_string(kind_name), baseline);
}

InterferencePattern load_pattern_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pattern file " + path.string());
  return read_pattern_csv(in);
}

void write_distribution_csv(std::ostream& out, const FockDistribution& dist) {
  out << "occupation,probability\n";
  for (const auto& [occ, p] : dist.probabilities) out << occ.to_string() << ',' << num(p) << '\n';
}

void write_density_csv(std::ostream& out, const RealGrid2& d) {
  out << "detuning_s,detuning_i,density\n";
  for (Eigen::Index j = 0; j < d.values().rows(); ++j)
    for (Eigen::Index k = 0; k < d.values().cols(); ++k)
      out << num(d.axis_row().value(static_cast<std::size_t>(j))) << ',' << num(d.axis_col().value(static_cast<std::size_t>(k)))
          << ',' << num(d.values()(j, k)) << '\n';
}

void write_marginal_csv(std::ostream& out, const SpectralMarginal& m) {
  out << "frequency,density\n";
  for (std::size_t k = 0; k < m.density.size(); ++k) out << num(m.frequency(k)) << ',' << num(m.density[k]) << '\n';
}

std::filesystem::path write_result(const std::filesystem::path& path, const ScenarioResult& r) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (r.pattern) write_pattern_csv(out, *r.pattern);
  else if (r.distribution) write_distribution_csv(out, *r.distribution);
  else if (r.spectral_density) write_density_csv(out, *r.spectral_density);
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return path;
}

std::string manifest_json(const ScenarioConfig& config, const ScenarioResult& result, double wall_seconds,
                          const std::string& timestamp, const std::filesystem::path& data_file) {
  nlohmann::json m;
  m["config"] = nlohmann::json::parse(config_to_json(config));
  m["version"] = std::string(library_version());
  m["wall_time_s"] = wall_seconds;
  m["timestamp"] = timestamp;
  m["data_file"] = data_file.string();
  nlohmann::json derived = nlohmann::json::object();
  for (const auto& [k, v] : result.derived) derived[k] = v;
  m["derived"] = derived;
  m["warnings"] = result.warnings;
  return m.dump(2) + "\n";
}

}  // namespace qinterf
