#pragma once

#include "qinterf/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace qinterf {

/// "# kind=<k> baseline=<v> visibility=<v>", "delay,probability", then rows.
void write_pattern_csv(std::ostream& out, const InterferencePattern& pattern);
/// Rejects files whose delays are not uniformly spaced.
InterferencePattern read_pattern_csv(std::istream& in);
InterferencePattern load_pattern_csv(const std::filesystem::path& path);

/// "occupation,probability" with occupations rendered n0|n1|...
void write_distribution_csv(std::ostream& out, const FockDistribution& dist);

/// "detuning_s,detuning_i,density", row-major.
void write_density_csv(std::ostream& out, const RealGrid2& density);

/// "frequency,density" with absolute frequencies.
void write_marginal_csv(std::ostream& out, const SpectralMarginal& marginal);

/// Writes the data file of `result`; returns its path.
std::filesystem::path write_result(const std::filesystem::path& path, const ScenarioResult& result);

/// Manifest: config echo, version, wall time, timestamp, derived quantities.
std::string manifest_json(const ScenarioConfig& config, const ScenarioResult& result, double wall_seconds,
                          const std::string& timestamp, const std::filesystem::path& data_file);

std::string_view library_version();

}  // namespace qinterf
