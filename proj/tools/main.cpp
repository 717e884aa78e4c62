#include "qinterf/output.hpp"
#include "qinterf/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qinterf;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitGuard = 2;

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("config: cannot read '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_validate(const fs::path& config) {
  const ConfigReport r = check_config(read_file(config), config.parent_path(), true);
  for (const std::string& v : r.violations) std::cout << v << '\n';
  if (!r.violations.empty()) {
    std::cerr << r.violations.size() << " violation(s) in " << config.string() << '\n';
    return kExitConfig;
  }
  return 0;
}

int cmd_simulate(const fs::path& config_path, const std::string& out_dir) {
  const ConfigReport report = check_config(read_file(config_path), config_path.parent_path(), false);
  if (!report.config) {
    for (const std::string& v : report.violations) std::cerr << "error: " << v << '\n';
    return kExitConfig;
  }
  const ScenarioConfig& cfg = *report.config;
  fs::path data = cfg.output.path;
  if (!out_dir.empty()) data = fs::path(out_dir) / data.filename();

  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioResult result = run_scenario(cfg, config_path.parent_path());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_result(data, result);
  const fs::path manifest = data.parent_path() / "manifest.json";
  std::ofstream(manifest) << manifest_json(cfg, result, wall, utc_timestamp(), data.filename());
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "wrote " << data.string() << " and " << manifest.string() << '\n';
  for (const auto& [k, v] : result.derived) std::cout << "  " << k << " = " << v << '\n';
  return 0;
}

// The measured pattern gives only Re G, so the recovered spectrum is mirrored
// about zero; for the sum frequency the physical half is the positive one.
SpectralMarginal fold_positive(const SpectralMarginal& m) {
  const std::size_t zero = m.axis.count() / 2;
  std::vector<double> d(m.density.begin() + static_cast<std::ptrdiff_t>(zero), m.density.end());
  for (std::size_t k = 1; k < d.size(); ++k) d[k] *= 2.0;
  return SpectralMarginal{Axis(0.0, m.axis.step(), d.size()), m.offset, std::move(d), m.kind};
}

int cmd_qwkt(const fs::path& pattern_path, const std::string& kind, const fs::path& out) {
  const InterferencePattern raw = load_pattern_csv(pattern_path);
  const InterferencePattern pattern(raw.axis(), raw.values(), pattern_kind_from_string(kind), raw.baseline());
  SpectralMarginal m = qwkt_inverse(correlation_from_pattern(pattern));
  if (pattern.kind() == PatternKind::noon) m = fold_positive(m);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out.string());
  write_marginal_csv(f, m);
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qinterf: two-photon and few-photon interference simulator"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  std::string config, out_dir;
  auto* sim = app.add_subcommand("simulate", "run one scenario and write data plus manifest.json");
  sim->add_option("--config", config, "scenario JSON")->required();
  sim->add_option("--out", out_dir, "output directory (overrides the folder of output.path)");

  auto* val = app.add_subcommand("validate", "check a scenario without computing; lists every violation");
  val->add_option("--config", config, "scenario JSON")->required();

  std::string pattern, kind, out;
  auto* qw = app.add_subcommand("qwkt", "recover a sum/difference spectrum from a pattern CSV");
  qw->add_option("--pattern", pattern, "pattern CSV")->required();
  qw->add_option("--kind", kind, "pattern kind")->required()->check(CLI::IsMember({"hom", "noon"}));
  qw->add_option("--out", out, "spectrum CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(config, out_dir);
    if (*val) return cmd_validate(config);
    if (*qw) return cmd_qwkt(pattern, kind, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return kExitGuard;
  } catch (const NyquistViolation& e) {
    std::cerr << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
