#include "qinterf/fockspace.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qinterf {

ModeOccupation::ModeOccupation(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("mode occupation: no modes");
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("mode occupation: negative photon number");
    total_ += c;
  }
}

std::string ModeOccupation::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (k) s += '|';
    s += std::to_string(counts_[k]);
  }
  return s;
}

ModeOccupation ModeOccupation::parse(const std::string& text) {
  std::vector<int> counts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, '|');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("mode occupation: cannot parse '" + text + "'");
    counts.push_back(v);
  }
  return ModeOccupation(std::move(counts));
}

MultiportUnitary::MultiportUnitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("unitary: matrix must be square");
  if (!matrix_.allFinite()) throw std::invalid_argument("unitary: non-finite entries");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  const double err = (matrix_.adjoint() * matrix_ - id).norm();
  if (err > 1e-10) throw std::invalid_argument("unitary: ||U^dag U - 1|| = " + std::to_string(err) + " exceeds 1e-10");
}

MultiportUnitary MultiportUnitary::with_layers(int layers) const {
  if (layers < 1) throw std::invalid_argument("unitary: layer count must be positive");
  const Eigen::Index m = matrix_.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m * layers, m * layers);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index l = 0; l < layers; ++l) out(r * layers + l, c * layers + l) = matrix_(r, c);
  return MultiportUnitary(std::move(out));
}

MultiportUnitary MultiportUnitary::bs50() {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  return MultiportUnitary(m / std::sqrt(2.0));
}

MultiportUnitary MultiportUnitary::fourier(int m) {
  if (m < 2) throw std::invalid_argument("fourier unitary: m must be at least 2");
  Eigen::MatrixXcd u(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) u(j, k) = std::polar(norm, kTwoPi * ((j * k) % m) / m);
  return MultiportUnitary(std::move(u));
}

MultiportUnitary MultiportUnitary::standard(const std::string& name) {
  if (name == "bs50") return bs50();
  if (name.rfind("fourier", 0) == 0) {
    const std::string digits = name.substr(7);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 4)
      return fourier(std::stoi(digits));
  }
  throw std::invalid_argument("unknown unitary '" + name + "' (expected bs50 or fourier<m>)");
}

cplx permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix must be square");
  const auto n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n > 30) throw GuardViolation("permanent: matrix larger than 30x30");
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  cplx total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if (gray >> j & 1U)
      row_sums += a.col(j);
    else
      row_sums -= a.col(j);
    const cplx prod = row_sums.prod();
    total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
  }
  return n % 2 == 0 ? total : -total;
}

namespace {

void enumerate(std::size_t mode, int left, std::vector<int>& cur, std::vector<ModeOccupation>& out) {
  if (mode + 1 == cur.size()) {
    cur[mode] = left;
    out.emplace_back(cur);
    return;
  }
  for (int c = left; c >= 0; --c) {
    cur[mode] = c;
    enumerate(mode + 1, left - c, cur, out);
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::vector<Eigen::Index> expand(const ModeOccupation& occ) {
  std::vector<Eigen::Index> idx;
  for (std::size_t k = 0; k < occ.modes(); ++k)
    for (int c = 0; c < occ[k]; ++c) idx.push_back(static_cast<Eigen::Index>(k));
  return idx;
}

double factorial_product(const ModeOccupation& occ) {
  double p = 1.0;
  for (int c : occ.counts()) p *= factorial(c);
  return p;
}

void check_photons(int n) {
  if (n > kMaxPhotons)
    throw GuardViolation("photon number " + std::to_string(n) + " exceeds the guard of " + std::to_string(kMaxPhotons));
}

}  // namespace

std::vector<ModeOccupation> enumerate_occupations(std::size_t modes, int photons) {
  if (modes == 0) throw std::invalid_argument("enumerate_occupations: no modes");
  if (photons < 0) throw std::invalid_argument("enumerate_occupations: negative photon number");
  std::vector<ModeOccupation> out;
  std::vector<int> cur(modes, 0);
  enumerate(0, photons, cur, out);
  return out;
}

cplx transition_amplitude(const ModeOccupation& in, const ModeOccupation& out, const MultiportUnitary& u) {
  if (in.modes() != u.modes() || out.modes() != u.modes())
    throw std::invalid_argument("transition amplitude: occupation has " + std::to_string(in.modes()) +
                                " modes but the unitary acts on " + std::to_string(u.modes()));
  if (in.total() != out.total()) return 0.0;
  check_photons(in.total());
  const auto rows = expand(out);
  const auto cols = expand(in);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = u.matrix()(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
  return permanent(sub) / std::sqrt(factorial_product(in) * factorial_product(out));
}

double FockDistribution::at(const ModeOccupation& occ) const {
  const auto it = probabilities.find(occ);
  return it == probabilities.end() ? 0.0 : it->second;
}

double FockDistribution::total() const {
  double s = 0.0;
  for (const auto& [occ, p] : probabilities) s += p;
  return s;
}

FockState FockState::basis(const ModeOccupation& occ) { return FockState{{{occ, cplx(1.0)}}}; }

double FockState::norm_squared() const {
  double s = 0.0;
  for (const auto& [occ, a] : amplitudes) s += std::norm(a);
  return s;
}

FockDistribution FockState::distribution() const {
  FockDistribution d;
  for (const auto& [occ, a] : amplitudes) d.probabilities[occ] = std::norm(a);
  return d;
}

FockState evolve_state(const FockState& input, const MultiportUnitary& u) {
  if (input.amplitudes.empty()) throw std::invalid_argument("evolve: empty input state");
  const int n = input.amplitudes.begin()->first.total();
  for (const auto& [occ, a] : input.amplitudes) {
    if (occ.modes() != u.modes())
      throw std::invalid_argument("evolve: input has " + std::to_string(occ.modes()) + " modes, unitary has " +
                                  std::to_string(u.modes()));
    if (occ.total() != n) throw std::invalid_argument("evolve: input mixes photon numbers");
  }
  check_photons(n);
  if (std::abs(input.norm_squared() - 1.0) > 1e-9) throw std::invalid_argument("evolve: input state is not normalized");

  FockState out;
  for (const ModeOccupation& o : enumerate_occupations(u.modes(), n)) {
    cplx amp = 0.0;
    for (const auto& [in, c] : input.amplitudes)
      if (c != cplx(0.0)) amp += c * transition_amplitude(in, o, u);
    out.amplitudes.emplace(o, amp);
  }
  return out;
}

FockDistribution evolve(const ModeOccupation& input, const MultiportUnitary& u) {
  return evolve_state(FockState::basis(input), u).distribution();
}

FockDistribution marginalize_layers(const FockDistribution& dist, int layers) {
  if (layers < 1) throw std::invalid_argument("marginalize_layers: layer count must be positive");
  FockDistribution out;
  for (const auto& [occ, p] : dist.probabilities) {
    if (occ.modes() % static_cast<std::size_t>(layers) != 0)
      throw std::invalid_argument("marginalize_layers: mode count is not a multiple of the layer count");
    std::vector<int> spatial(occ.modes() / static_cast<std::size_t>(layers), 0);
    for (std::size_t k = 0; k < occ.modes(); ++k) spatial[k / static_cast<std::size_t>(layers)] += occ[k];
    out.probabilities[ModeOccupation(std::move(spatial))] += p;
  }
  return out;
}

FockDistribution delayed_pair_distribution(int n_per_port, double indistinguishability, const MultiportUnitary& u) {
  if (n_per_port < 1) throw std::invalid_argument("delayed pair: photons per port must be positive");
  check_photons(2 * n_per_port);
  if (!(indistinguishability >= 0.0 && indistinguishability <= 1.0))
    throw std::invalid_argument("delayed pair: indistinguishability must lie in [0, 1]");
  if (u.modes() != 2) throw std::invalid_argument("delayed pair: unitary must act on 2 spatial modes");

  // modes: (port0, shared), (port0, orthogonal), (port1, shared), (port1, orthogonal)
  const int n = n_per_port;
  FockState in;
  const double sq = std::sqrt(indistinguishability);
  const double sr = std::sqrt(1.0 - indistinguishability);
  for (int k = 0; k <= n; ++k) {
    const double binom = factorial(n) / (factorial(k) * factorial(n - k));
    const double amp = std::sqrt(binom) * std::pow(sq, k) * std::pow(sr, n - k);
    if (amp == 0.0) continue;
    in.amplitudes.emplace(ModeOccupation({n, 0, k, n - k}), amp);
  }
  return marginalize_layers(evolve_state(in, u.with_layers(2)).distribution(), 2);
}

namespace {

using u128 = unsigned __int128;

u128 factorial128(int n) {
  u128 f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<u128>(k);
  return f;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

HollandBurnettState hb_coefficients(int photons, double phi) {
  if (photons < 2 || photons % 2 != 0) throw std::invalid_argument("Holland-Burnett: photon number must be even and >= 2");
  if (photons > 20) throw GuardViolation("Holland-Burnett: photon number above 20");
  const int half = photons / 2;
  HollandBurnettState st{photons, phi, {}};
  for (int n = 0; n <= half; ++n) {
    u128 num = factorial128(2 * n) * factorial128(photons - 2 * n);
    const u128 fn = factorial128(n);
    const u128 fm = factorial128(half - n);
    u128 den = (u128{1} << photons) * fn * fn * fm * fm;
    const u128 g = gcd128(num, den);
    num /= g;
    den /= g;
    const long double mag = std::sqrt(static_cast<long double>(num) / static_cast<long double>(den));
    st.coefficients.push_back(std::polar(static_cast<double>(mag), 2.0 * n * phi));
  }
  return st;
}

FockState HollandBurnettState::as_state() const {
  FockState s;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    const int a = 2 * static_cast<int>(n);
    s.amplitudes.emplace(ModeOccupation({a, photons - a}), coefficients[n]);
  }
  return s;
}

InterferencePattern noon_phase_fringe(int photons, const Axis& phi) {
  if (photons < 1) throw std::invalid_argument("noon fringe: photon number must be positive");
  const ModeOccupation left({photons, 0});
  const ModeOccupation right({0, photons});
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<double> values(phi.count());
  for (std::size_t k = 0; k < phi.count(); ++k) {
    // phase shift exp(i n1 phi) on mode 1
    FockState ref{{{left, r}, {right, r}}};
    FockState shifted = ref;
    for (auto& [occ, a] : shifted.amplitudes) a *= std::polar(1.0, occ[1] * phi.value(k));
    cplx overlap = 0.0;
    for (const auto& [occ, a] : ref.amplitudes) overlap += std::conj(a) * shifted.amplitudes.at(occ);
    values[k] = std::norm(overlap);
  }
  return InterferencePattern(phi, std::move(values), PatternKind::fock_scan, 0.5);
}

bool fourier_suppressed(const ModeOccupation& out) {
  const auto m = static_cast<long>(out.modes());
  long s = 0;
  for (long k = 0; k < m; ++k) s += k * out[static_cast<std::size_t>(k)];
  return s % m != 0;
}

}  // namespace qinterf
