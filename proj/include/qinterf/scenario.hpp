#pragma once

#include "qinterf/fockspace.hpp"
#include "qinterf/fourfold.hpp"
#include "qinterf/spectra.hpp"
#include "qinterf/twofold.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinterf {

/// Config problems. The message always starts with the dotted key at fault.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceConfig {
  enum class Kind { gaussian, comb, custom };
  Kind kind = Kind::gaussian;
  // Double-Gaussian parameters; for a comb these describe the base unless
  // `path` names a base file.
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
  double center_s = 0.0;
  double center_i = 0.0;
  int points = 256;
  double half_width = 0.0;  // 0: 8 single-photon standard deviations
  std::string path;         // custom source, or comb base file
  int modes = 1;
  double spacing = 0.0;

  bool operator==(const SourceConfig&) const = default;
};

struct ExperimentConfig {
  enum class Kind { hom, hom_temporal, hom_spectral, noon, franson, fourfold, fock };
  Kind kind = Kind::hom;
  int oversample = 1;  // hom_temporal
  double tau = 0.0;    // hom_spectral
  // franson: common delay around base_delay, or independent arms (t1 scanned)
  bool franson_independent = false;
  double base_delay = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  // fourfold
  std::optional<SourceConfig> source2;
  std::string method = "schmidt";
  int rank = 8;
  // fock
  std::string unitary = "bs50";
  std::vector<int> input;
  double indistinguishability = 1.0;

  bool operator==(const ExperimentConfig&) const = default;
};

struct ScanConfig {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  bool operator==(const ScanConfig&) const = default;
};

struct OutputConfig {
  std::string path = "pattern.csv";
  std::string format = "csv";

  bool operator==(const OutputConfig&) const = default;
};

/// One simulation run. Quantities are SI (rad/s, s) after parsing.
struct ScenarioConfig {
  std::optional<SourceConfig> source;  // absent only for fock experiments
  ExperimentConfig experiment;
  std::optional<ScanConfig> scan;      // absent for fock and hom_spectral
  OutputConfig output;

  bool operator==(const ScenarioConfig&) const = default;
};

std::string_view to_string(ExperimentConfig::Kind kind);

struct ConfigReport {
  std::optional<ScenarioConfig> config;  // set when no violations were found
  std::vector<std::string> violations;   // each starts with the offending key
};

/// Parses a JSON scenario and statically checks it: types, ranges, unit
/// suffixes, source/experiment compatibility and referenced files (relative
/// to `base_dir`). With `include_guards`, the numerical limits (grid support,
/// photon number, direct-quadrature size) are checked too. Every violation is
/// collected.
ConfigReport check_config(const std::string& json_text, const std::filesystem::path& base_dir = {},
                          bool include_guards = true);

/// Throws ConfigError naming the first violation. Guard limits are left to
/// the run, which raises GuardViolation.
ScenarioConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Reads and parses a config file; relative paths resolve against its folder.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Normalized JSON echo (SI numbers, defaults filled in). Re-parses to an
/// equal ScenarioConfig.
std::string config_to_json(const ScenarioConfig& config);

enum class Quantity { frequency, center_frequency, time };

/// Converts "1.5 THz" (angular, 2 pi 1e12 rad/s per THz), "200 fs", "3 ps",
/// "1550 nm" or a bare SI number. "nm" is accepted only for center
/// frequencies and becomes 2 pi c / lambda. Throws std::invalid_argument.
double parse_quantity(const std::string& text, Quantity kind);

struct ScenarioResult {
  std::optional<InterferencePattern> pattern;
  std::optional<FockDistribution> distribution;
  std::optional<RealGrid2> spectral_density;
  std::map<std::string, double> derived;  // baseline, visibility, purity, ...
  std::vector<std::string> warnings;
};

/// Builds a source; GuardViolation when the grid cannot hold it.
JointSpectralAmplitude build_source(const SourceConfig& source, const std::filesystem::path& base_dir = {});

/// Runs the experiment. Throws GuardViolation for numerical limits and
/// ConfigError for inputs that only fail once built (e.g. mismatched axes).
ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& base_dir = {});

}  // namespace qinterf
