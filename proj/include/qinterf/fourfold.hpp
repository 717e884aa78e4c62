#pragma once

#include "qinterf/spectra.hpp"
#include "qinterf/twofold.hpp"

namespace qinterf {

/// Two independent heralded sources whose signal photons meet at a beam
/// splitter. The signal axes are re-expressed on one common absolute axis
/// (detunings about jsa1's signal center), zero-padded to the union of both
/// supports. The idler axes stay separate; idlers only herald.
class SourcePair {
 public:
  /// Throws std::invalid_argument when the signal steps differ or the two
  /// signal lattices are offset by a non-integer number of steps.
  SourcePair(JointSpectralAmplitude jsa1, JointSpectralAmplitude jsa2);

  const JointSpectralAmplitude& jsa1() const { return jsa1_; }
  const JointSpectralAmplitude& jsa2() const { return jsa2_; }

  const Axis& signal_axis() const { return signal_axis_; }
  double signal_center() const { return jsa1_.center_s(); }
  const Axis& idler_axis1() const { return jsa1_.axis_i(); }
  const Axis& idler_axis2() const { return jsa2_.axis_i(); }
  /// Amplitudes on (common signal axis) x (own idler axis).
  const Eigen::MatrixXcd& f1() const { return f1_; }
  const Eigen::MatrixXcd& f2() const { return f2_; }

  /// Largest delay representable without aliasing, pi / signal step.
  double max_delay() const { return kPi / signal_axis_.step(); }

 private:
  JointSpectralAmplitude jsa1_;
  JointSpectralAmplitude jsa2_;
  Axis signal_axis_;
  Eigen::MatrixXcd f1_;
  Eigen::MatrixXcd f2_;
};

struct FourfoldMethod {
  enum class Kind { direct, schmidt };
  Kind kind = Kind::schmidt;
  int rank = 8;

  static FourfoldMethod direct() { return {Kind::direct, 0}; }
  static FourfoldMethod schmidt(int rank = 8) { return {Kind::schmidt, rank}; }
};

struct FourfoldResult {
  InterferencePattern pattern;
  /// 1 - sum of retained Schmidt weights, worst of the two sources (0 for direct).
  double truncation_weight = 0.0;
};

/// Largest grid the direct 4D quadrature accepts (total points).
inline constexpr double kMaxDirectPoints = 64.0 * 64.0 * 64.0 * 64.0;

/// P4(tau) = 1/4 sum |f1(s1,i1) f2(s2,i2) - f1(s2,i1) f2(s1,i2) exp(-i(w_s2 - w_s1) tau)|^2.
///
/// direct: literal trapezoidal 4D quadrature; GuardViolation above 64^4 points.
/// schmidt: with f = sum a_k u_k v_k^* the idler sums collapse and
///   P4 = 1/2 [A - sum_kl a_k^2 b_l^2 |O_kl(tau)|^2],
///   O_kl(tau) = sum_s u_k(s) conj(u'_l(s)) exp(-i w_s tau),
/// exact against direct at full rank.
/// Delays beyond max_delay() are rejected (the signal lattice aliases there).
FourfoldResult fourfold_pattern(const SourcePair& pair, const Axis& tau, FourfoldMethod method = {});

/// (P_inf - P(0)) / P_inf, with P_inf = n1 n2 / 2 the large-delay limit
/// where the cross term has vanished (n = squared norm of each JSA).
double fourfold_visibility(const SourcePair& pair, FourfoldMethod method = {});

}  // namespace qinterf
