#pragma once

#include "qinterf/numerics.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

namespace qinterf {

/// Biphoton joint spectral amplitude f(w_s, w_i).
///
/// The grid stores detunings about (center_s, center_i): rows run along the
/// signal detuning, columns along the idler detuning, both in rad/s. The
/// amplitude is normalized on construction so that sum |f|^2 dw_s dw_i = 1;
/// every probability computed downstream is therefore absolute.
class JointSpectralAmplitude {
 public:
  /// Validates and normalizes. Throws std::invalid_argument("degenerate
  /// amplitude") when all samples vanish.
  static JointSpectralAmplitude normalized(Grid2 grid, double center_s, double center_i);

  const Grid2& grid() const { return grid_; }
  const Axis& axis_s() const { return grid_.axis_row(); }
  const Axis& axis_i() const { return grid_.axis_col(); }
  const Eigen::MatrixXcd& values() const { return grid_.values(); }
  double center_s() const { return center_s_; }
  double center_i() const { return center_i_; }

  /// Factor the input samples were multiplied by during normalization.
  double renormalization() const { return renormalization_; }

 private:
  JointSpectralAmplitude(Grid2 grid, double cs, double ci, double factor)
      : grid_(std::move(grid)), center_s_(cs), center_i_(ci), renormalization_(factor) {}

  Grid2 grid_;
  double center_s_;
  double center_i_;
  double renormalization_;
};

using JsaFunction = std::function<cplx(double detuning_s, double detuning_i)>;

/// Samples `fn` on the detuning axes and normalizes.
JointSpectralAmplitude jsa_from_function(const Axis& axis_s, const Axis& axis_i, double center_s,
                                         double center_i, const JsaFunction& fn);

/// Double-Gaussian JSA: f ~ exp(-nu+^2 / 4 sigma+^2) exp(-nu-^2 / 4 sigma-^2) with
/// nu+- = nu_s +- nu_i. sigma_plus and sigma_minus are the standard deviations
/// of the sum- and difference-frequency intensity profiles. sigma_plus <
/// sigma_minus gives anti-correlation, sigma_plus > sigma_minus positive
/// correlation, equal values a separable state.
///
/// This parametric family is a modelling choice, not something fixed by the
/// underlying physics; real crystals give sinc-like phase-matching.
///
/// Throws GuardViolation when an axis does not cover +-6 single-photon
/// standard deviations.
JointSpectralAmplitude gaussian_jsa(double sigma_plus, double sigma_minus, double center_s,
                                    double center_i, const Axis& axis_s, const Axis& axis_i);

/// Single-axis intensity standard deviation of the double-Gaussian model.
double gaussian_single_photon_width(double sigma_plus, double sigma_minus);

struct CombJsa {
  JointSpectralAmplitude jsa;
  /// Largest normalized overlap |<copy_k|copy_k+1>| between neighbouring modes.
  double max_mode_overlap = 0.0;
  /// Set when max_mode_overlap exceeds 1e-3: the modes are not orthogonal.
  bool modes_overlap = false;
};

/// Equal-weight coherent sum of `mode_count` copies of `base`. Copy k is
/// displaced by +d_k on the signal axis and -d_k on the idler axis with
/// d_k = (k - (N-1)/2) * mode_spacing, i.e. along the anti-correlated
/// direction, so the difference-frequency spectrum splits into N lines spaced
/// 2 * mode_spacing apart while the sum frequency is unchanged.
CombJsa comb_jsa(const JointSpectralAmplitude& base, int mode_count, double mode_spacing);

/// Plain-text interchange format:
///   # comment
///   axis_s <start> <step> <count>
///   axis_i <start> <step> <count>
///   center_s <value>
///   center_i <value>
///   <re> <im>            (count_s * count_i lines, row-major)
JointSpectralAmplitude read_jsa(std::istream& in);
JointSpectralAmplitude load_jsa(const std::filesystem::path& path);
void write_jsa(std::ostream& out, const JointSpectralAmplitude& jsa);
void save_jsa(const std::filesystem::path& path, const JointSpectralAmplitude& jsa);

/// Time-domain dual F(t1, t2) of a JSA's detuning grid. The optical carrier
/// phase exp(-i(center_s t1 + center_i t2)) is kept implicit; only the center
/// difference enters interference observables.
class JointTemporalAmplitude {
 public:
  JointTemporalAmplitude(Grid2 grid, double center_s, double center_i)
      : grid_(std::move(grid)), center_s_(center_s), center_i_(center_i) {}

  const Grid2& grid() const { return grid_; }
  double center_s() const { return center_s_; }
  double center_i() const { return center_i_; }

 private:
  Grid2 grid_;
  double center_s_;
  double center_i_;
};

/// Forward 2D transform of the JSA. `oversample` (a power of two) zero-pads
/// the frequency grid to refine the time step by that factor.
JointTemporalAmplitude to_temporal(const JointSpectralAmplitude& jsa, int oversample = 1);

struct SchmidtAnalysis {
  std::vector<double> coefficients;  // descending, sum to 1
  double purity = 1.0;
  double schmidt_number = 1.0;
};

SchmidtAnalysis schmidt_analysis(const JointSpectralAmplitude& jsa);

enum class MarginalKind { sum_frequency, difference_frequency };

/// F(w) = 1/2 * integral |f|^2 over the complementary rotated coordinate.
/// `axis` holds detunings; the absolute frequency of sample k is
/// offset + axis.value(k), where offset is center_s + center_i for the sum
/// spectrum and center_s - center_i for the difference spectrum.
struct SpectralMarginal {
  Axis axis;
  double offset = 0.0;
  std::vector<double> density;
  MarginalKind kind = MarginalKind::difference_frequency;

  double frequency(std::size_t k) const { return offset + axis.value(k); }
};

SpectralMarginal marginal(const JointSpectralAmplitude& jsa, MarginalKind kind);

/// Signal-photon spectrum |f(w_s)|^2 integrated over the idler.
struct SingleSpectrum {
  Axis axis;  // detuning
  double center = 0.0;
  std::vector<double> density;
};

SingleSpectrum signal_spectrum(const JointSpectralAmplitude& jsa);

/// Gaussian single-photon spectrum of intensity standard deviation `sigma`.
SingleSpectrum gaussian_spectrum(double sigma, double center, const Axis& axis);

/// s = sum|f - f^T|^2 / sum|f|^2: 0 for exchange-symmetric, 4 for
/// antisymmetric amplitudes. Requires identical axes and centers.
double exchange_symmetry_score(const JointSpectralAmplitude& jsa);

/// (f + f^T) and (f - f^T), renormalized. Same requirements as above.
JointSpectralAmplitude symmetrized(const JointSpectralAmplitude& jsa);
JointSpectralAmplitude antisymmetrized(const JointSpectralAmplitude& jsa);

}  // namespace qinterf
