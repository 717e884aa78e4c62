#pragma once

#include "qinterf/numerics.hpp"
#include "qinterf/spectra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qinterf {

enum class PatternKind { hom, noon, franson_coincidence, franson_singles, fourfold, fock_scan };

std::string_view to_string(PatternKind kind);
PatternKind pattern_kind_from_string(std::string_view name);

/// Coincidence (or single-count) probability sampled along a delay or phase
/// axis. Values are probabilities in [0, 1]; visibility is
/// (max - min) / (max + min) over the scan window, recomputed on construction.
class InterferencePattern {
 public:
  /// Samples within 1e-9 outside [0, 1] are clamped (round-off); anything
  /// further out throws std::domain_error.
  InterferencePattern(Axis axis, std::vector<double> values, PatternKind kind, double baseline);

  const Axis& axis() const { return axis_; }
  const std::vector<double>& values() const { return values_; }
  PatternKind kind() const { return kind_; }
  /// Incoherent (large-delay) limit of the engine that produced the pattern.
  double baseline() const { return baseline_; }
  double visibility() const { return visibility_; }

 private:
  Axis axis_;
  std::vector<double> values_;
  PatternKind kind_;
  double baseline_;
  double visibility_;
};

double visibility_of(const std::vector<double>& values);

// ---- Hong-Ou-Mandel -------------------------------------------------------

/// P(tau) = 1/4 integral |f(w1,w2) - f(w2,w1) exp(-i(w1-w2)tau)|^2 dw1 dw2,
/// with absolute frequencies. Signal and idler axes must share a step.
InterferencePattern hom_pattern(const JointSpectralAmplitude& jsa, const Axis& tau);

/// Same quantity evaluated in the time domain:
/// P(tau) = 1/4 integral |F(t1,t2) - F(t2-tau, t1+tau)|^2 dt1 dt2,
/// with bilinear interpolation for the shifted samples.
InterferencePattern hom_pattern_temporal(const JointTemporalAmplitude& jta, const Axis& tau);

/// Integrand of hom_pattern at one delay:
/// D(w1,w2) = 1/4 |f(w1,w2) - f(w2,w1) exp(-i(w1-w2)tau)|^2.
/// Axes are signal/idler detunings (extended if the centers differ).
RealGrid2 spectrally_resolved_hom(const JointSpectralAmplitude& jsa, double tau);

/// Indistinguishability of a delayed single photon, I(tau) = exp(-(dw tau)^2 / 2).
/// Normalized so that I(0) = 1.
class IndistinguishabilityCurve {
 public:
  explicit IndistinguishabilityCurve(double delta_omega);
  double delta_omega() const { return delta_omega_; }
  double operator()(double tau) const;

 private:
  double delta_omega_;
};

InterferencePattern hom_uncorrelated(const IndistinguishabilityCurve& curve, const Axis& tau);

// ---- N00N -----------------------------------------------------------------

/// P(tau) = 1/16 integral |f(w3,w4)(e3+1)(e4+1) + f(w4,w3)(e3-1)(e4-1)|^2,
/// e_k = exp(-i w_k tau), absolute frequencies.
InterferencePattern noon_pattern(const JointSpectralAmplitude& jsa, const Axis& tau);

/// P11(tau) = 1/2 [1 + I(tau) cos(2 w tau)].
InterferencePattern noon_uncorrelated(const IndistinguishabilityCurve& curve, double omega, const Axis& tau);

// ---- Franson --------------------------------------------------------------

/// Arm delays for a Franson scan. The scan axis carries offsets dT around
/// the base delays: common mode uses T1 = T2 = base1 + dT; independent mode
/// scans arm 1 only, T1 = base1 + dT, T2 = base2.
struct FransonDelays {
  enum class Mode { common_delay, independent };
  Mode mode = Mode::common_delay;
  double base1 = 0.0;
  double base2 = 0.0;

  static FransonDelays common(double base) { return {Mode::common_delay, base, base}; }
  static FransonDelays independent(double t1, double t2) { return {Mode::independent, t1, t2}; }
};

/// P = 1/4 integral |f|^2 [1 + cos(w1 T1)] [1 + cos(w2 T2)], absolute frequencies.
InterferencePattern franson_pattern(const JointSpectralAmplitude& jsa, const Axis& offsets,
                                    const FransonDelays& delays);

/// P_sc = 1/2 integral |f(w)|^2 [1 + cos(w T)], T = base_delay + offset.
InterferencePattern franson_singles(const SingleSpectrum& spectrum, const Axis& offsets, double base_delay = 0.0);

// ---- Quantum Wiener-Khinchin ---------------------------------------------

enum class CorrelationKind { g2_plus, g2_minus };

struct CorrelationFunction {
  Axis axis;  // tau, seconds
  std::vector<cplx> values;
  CorrelationKind kind = CorrelationKind::g2_minus;
};

/// G(tau) = integral F(w) exp(-i w tau) dw over absolute frequency.
/// Sum-frequency marginals give G2+ (N00N), difference-frequency G2- (HOM);
/// P(tau) = 1/2 [1 +- Re G(tau)].
CorrelationFunction qwkt_forward(const SpectralMarginal& marginal, const Axis& tau);

/// Thrown when the delay sampling cannot represent the spectrum.
class NyquistViolation : public std::runtime_error {
 public:
  NyquistViolation(const std::string& what, double bandwidth, double nyquist)
      : std::runtime_error(what), bandwidth_(bandwidth), nyquist_(nyquist) {}
  double bandwidth_estimate() const { return bandwidth_; }
  double nyquist_limit() const { return nyquist_; }

 private:
  double bandwidth_;
  double nyquist_;
};

/// F(w) = 1/2pi integral G(tau) exp(i w tau) dtau, evaluated on the full
/// alias-free band |w| < pi / dtau (step 2pi / (N dtau), centered).
SpectralMarginal qwkt_inverse(const CorrelationFunction& g2);

/// Same, evaluated at absolute frequencies offset + axis.value(k).
SpectralMarginal qwkt_inverse(const CorrelationFunction& g2, const Axis& axis, double offset);

/// Estimate of G(tau) from a measured or simulated pattern after baseline
/// removal: G = +-(P / baseline - 1), + for N00N, - for HOM.
CorrelationFunction correlation_from_pattern(const InterferencePattern& pattern);

}  // namespace qinterf
