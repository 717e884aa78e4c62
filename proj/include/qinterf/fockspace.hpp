#pragma once

#include "qinterf/numerics.hpp"
#include "qinterf/twofold.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace qinterf {

/// Largest total photon number the Fock engine accepts.
inline constexpr int kMaxPhotons = 8;

/// Photon numbers per mode. With temporal layers the layout is spatial-major:
/// index = spatial * layers + layer.
class ModeOccupation {
 public:
  ModeOccupation() = default;
  explicit ModeOccupation(std::vector<int> counts);

  const std::vector<int>& counts() const { return counts_; }
  std::size_t modes() const { return counts_.size(); }
  int total() const { return total_; }
  int operator[](std::size_t k) const { return counts_[k]; }

  /// "n0|n1|...".
  std::string to_string() const;
  static ModeOccupation parse(const std::string& text);

  auto operator<=>(const ModeOccupation& o) const { return counts_ <=> o.counts_; }
  bool operator==(const ModeOccupation& o) const { return counts_ == o.counts_; }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// Column j is the image of input mode j: a_j^dag -> sum_k U(k, j) b_k^dag.
class MultiportUnitary {
 public:
  /// Throws std::invalid_argument unless ||U^dag U - 1|| <= 1e-10.
  explicit MultiportUnitary(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t modes() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// U (x) 1_layers in the spatial-major layout.
  MultiportUnitary with_layers(int layers) const;

  /// (1/sqrt2) [[1, 1], [1, -1]].
  static MultiportUnitary bs50();
  /// U(j, k) = exp(2 pi i jk / m) / sqrt(m); m = 3 is the tritter, 4 the quitter.
  static MultiportUnitary fourier(int m);
  /// "bs50" or "fourier<m>" (e.g. "fourier3").
  static MultiportUnitary standard(const std::string& name);

 private:
  Eigen::MatrixXcd matrix_;
};

/// Ryser's formula with Gray-code ordering, O(2^n n).
cplx permanent(const Eigen::MatrixXcd& a);

/// Every occupation of `photons` photons in `modes` modes, lexicographically
/// descending in the first mode.
std::vector<ModeOccupation> enumerate_occupations(std::size_t modes, int photons);

/// <out| U |in> = per(U[out rows, in cols]) / sqrt(prod in! prod out!).
cplx transition_amplitude(const ModeOccupation& in, const ModeOccupation& out, const MultiportUnitary& u);

struct FockDistribution {
  std::map<ModeOccupation, double> probabilities;

  double at(const ModeOccupation& occ) const;
  double total() const;
};

/// Superposition of Fock states with a common photon number.
struct FockState {
  std::map<ModeOccupation, cplx> amplitudes;

  static FockState basis(const ModeOccupation& occ);
  double norm_squared() const;
  FockDistribution distribution() const;
};

/// Throws GuardViolation above kMaxPhotons, std::invalid_argument on a
/// dimension mismatch, mixed photon numbers or a non-normalized state.
FockState evolve_state(const FockState& input, const MultiportUnitary& u);
FockDistribution evolve(const ModeOccupation& input, const MultiportUnitary& u);

/// Sums over temporal layers (spatial-major layout) to spatial photon counts.
FockDistribution marginalize_layers(const FockDistribution& dist, int layers);

/// n photons enter spatial port 0 and n enter port 1 of a two-port `u`.
/// Port 1 is delayed: each of its photons occupies the shared temporal mode
/// with amplitude sqrt(I) and an orthogonal one with sqrt(1 - I). The state
/// is evolved through u (x) 1_2 and the temporal layers are traced out.
FockDistribution delayed_pair_distribution(int n_per_port, double indistinguishability, const MultiportUnitary& u);

/// Coefficients c_n of |2n, N - 2n> for |N/2, N/2> sent through a balanced
/// beam splitter with relative phase phi.
struct HollandBurnettState {
  int photons = 0;
  double phi = 0.0;
  std::vector<cplx> coefficients;  // n = 0 .. N/2

  /// Same state as a Fock superposition over (|2n, N-2n>).
  FockState as_state() const;
};

/// |c_n|^2 = (2n)! (N-2n)! / (2^N (n!)^2 ((N/2-n)!)^2), evaluated as an exact
/// reduced fraction, times the phase exp(2 i n phi). N even, 2 <= N <= 20.
HollandBurnettState hb_coefficients(int photons, double phi);

/// |<N00N(0)|N00N(phi)>|^2 = 1/2 (1 + cos N phi), the phase-shifted state
/// (|N,0> + exp(i N phi)|0,N>)/sqrt2 projected on the unshifted one.
InterferencePattern noon_phase_fringe(int photons, const Axis& phi);

/// For |1...1> entering fourier(m): true when the output is forbidden by the
/// Fourier suppression law (sum of mode indices, each photon counted, is not
/// divisible by m).
bool fourier_suppressed(const ModeOccupation& out);

}  // namespace qinterf
