#include "qinterf/twofold.hpp"

#include <cmath>
#include <stdexcept>

namespace qinterf {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::hom: return "hom";
    case PatternKind::noon: return "noon";
    case PatternKind::franson_coincidence: return "franson_coincidence";
    case PatternKind::franson_singles: return "franson_singles";
    case PatternKind::fourfold: return "fourfold";
    case PatternKind::fock_scan: return "fock_scan";
  }
  return "unknown";
}

PatternKind pattern_kind_from_string(std::string_view name) {
  for (auto k : {PatternKind::hom, PatternKind::noon, PatternKind::franson_coincidence, PatternKind::franson_singles,
                 PatternKind::fourfold, PatternKind::fock_scan})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown pattern kind '" + std::string(name) + "'");
}

double visibility_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double den = *hi + *lo;
  return den > 0.0 ? (*hi - *lo) / den : 0.0;
}

InterferencePattern::InterferencePattern(Axis axis, std::vector<double> values, PatternKind kind, double baseline)
    : axis_(axis), values_(std::move(values)), kind_(kind), baseline_(baseline) {
  if (values_.size() != axis_.count()) throw std::invalid_argument("pattern: value count does not match axis");
  constexpr double slack = 1e-9;
  for (double& v : values_) {
    if (!std::isfinite(v) || v < -slack || v > 1.0 + slack)
      throw std::domain_error("pattern: probability " + std::to_string(v) + " outside [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
  }
  visibility_ = visibility_of(values_);
}

namespace {

// f and its exchanged copy f(w2, w1) sampled on one common grid of absolute
// frequencies. When the centers or axis origins differ, the grid is extended
// so that both supports fit.
struct ExchangePair {
  Axis axis_s;  // signal detuning about center_s
  Axis axis_i;  // idler detuning about center_i
  Eigen::MatrixXcd f;
  Eigen::MatrixXcd ft;
  Eigen::VectorXd w1;  // absolute frequencies along rows
  Eigen::VectorXd w2;  // absolute frequencies along columns
  Eigen::MatrixXd weights;
};

ExchangePair exchange_pair(const JointSpectralAmplitude& jsa) {
  const Axis& as = jsa.axis_s();
  const Axis& ai = jsa.axis_i();
  const double h = as.step();
  if (std::abs(ai.step() - h) > 1e-12 * h)
    throw std::invalid_argument("mismatched axes: signal and idler steps differ");
  const auto ns = static_cast<long>(as.count());
  const auto ni = static_cast<long>(ai.count());

  // Exchanged sample at grid index (j, k) reads the original at (k - d, j + d).
  const double d = (jsa.center_s() + as.start() - jsa.center_i() - ai.start()) / h;
  const bool integral = std::abs(d - std::round(d)) < 1e-9;
  const long r0 = std::min(0L, static_cast<long>(std::floor(-d)));
  const long r1 = std::max(ns, static_cast<long>(std::ceil(ni - d)));
  const long c0 = std::min(0L, static_cast<long>(std::floor(d)));
  const long c1 = std::max(ni, static_cast<long>(std::ceil(ns + d)));

  ExchangePair p{Axis(as.start() + static_cast<double>(r0) * h, h, static_cast<std::size_t>(r1 - r0)),
                 Axis(ai.start() + static_cast<double>(c0) * h, h, static_cast<std::size_t>(c1 - c0)),
                 {}, {}, {}, {}, {}};
  const Eigen::MatrixXcd& src = jsa.values();
  const auto rows = static_cast<Eigen::Index>(r1 - r0);
  const auto cols = static_cast<Eigen::Index>(c1 - c0);
  p.f = Eigen::MatrixXcd::Zero(rows, cols);
  p.f.block(-r0, -c0, src.rows(), src.cols()) = src;
  p.ft = Eigen::MatrixXcd::Zero(rows, cols);
  const long di = std::lround(d);
  for (Eigen::Index a = 0; a < rows; ++a) {
    const long j = a + r0;
    for (Eigen::Index b = 0; b < cols; ++b) {
      const long k = b + c0;
      if (integral) {
        const long sj = k - di;
        const long sk = j + di;
        if (sj >= 0 && sj < ns && sk >= 0 && sk < ni) p.ft(a, b) = src(sj, sk);
      } else {
        p.ft(a, b) = bilinear(src, static_cast<double>(k) - d, static_cast<double>(j) + d);
      }
    }
  }
  p.w1 = Eigen::VectorXd(rows);
  p.w2 = Eigen::VectorXd(cols);
  for (Eigen::Index a = 0; a < rows; ++a) p.w1(a) = jsa.center_s() + p.axis_s.value(static_cast<std::size_t>(a));
  for (Eigen::Index b = 0; b < cols; ++b) p.w2(b) = jsa.center_i() + p.axis_i.value(static_cast<std::size_t>(b));
  p.weights = trapezoid_weights(p.axis_s) * trapezoid_weights(p.axis_i).transpose();
  return p;
}

Eigen::VectorXcd phases(const Eigen::VectorXd& w, double tau, double sign) {
  Eigen::VectorXcd out(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) out(k) = std::polar(1.0, sign * w(k) * tau);
  return out;
}

}  // namespace

InterferencePattern hom_pattern(const JointSpectralAmplitude& jsa, const Axis& tau) {
  const ExchangePair p = exchange_pair(jsa);
  const double nf = p.weights.cwiseProduct(p.f.cwiseAbs2()).sum();
  const double nft = p.weights.cwiseProduct(p.ft.cwiseAbs2()).sum();
  const Eigen::MatrixXcd cross = p.weights.cast<cplx>().cwiseProduct(p.f.conjugate().cwiseProduct(p.ft));

  std::vector<double> values(tau.count());
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    const cplx x = phases(p.w1, t, -1.0).transpose() * cross * phases(p.w2, t, 1.0);
    values[n] = 0.25 * (nf + nft - 2.0 * x.real());
  }
  return InterferencePattern(tau, std::move(values), PatternKind::hom, 0.25 * (nf + nft));
}

RealGrid2 spectrally_resolved_hom(const JointSpectralAmplitude& jsa, double tau) {
  const ExchangePair p = exchange_pair(jsa);
  const Eigen::VectorXcd e1 = phases(p.w1, tau, -1.0);
  const Eigen::VectorXcd e2 = phases(p.w2, tau, 1.0);
  Eigen::MatrixXd d(p.f.rows(), p.f.cols());
  for (Eigen::Index a = 0; a < d.rows(); ++a)
    for (Eigen::Index b = 0; b < d.cols(); ++b) d(a, b) = 0.25 * std::norm(p.f(a, b) - p.ft(a, b) * e1(a) * e2(b));
  return RealGrid2(p.axis_s, p.axis_i, std::move(d));
}

InterferencePattern hom_pattern_temporal(const JointTemporalAmplitude& jta, const Axis& tau) {
  const Grid2& g = jta.grid();
  const Axis& tr = g.axis_row();
  const Axis& tc = g.axis_col();
  if (!(tr == tc)) throw std::invalid_argument("mismatched axes: temporal grid must share t1 and t2 axes");
  const double reach = 0.5 * (tr.last() - tr.start());
  if (std::abs(tau.start()) > reach || std::abs(tau.last()) > reach)
    throw std::invalid_argument("hom_pattern_temporal: delay beyond temporal grid support (|tau| <= " +
                                std::to_string(reach) + ")");

  const Eigen::MatrixXcd& G = g.values();
  const Eigen::VectorXd wr = trapezoid_weights(tr);
  const Eigen::VectorXd wc = trapezoid_weights(tc);
  const double dc = jta.center_s() - jta.center_i();
  const double dt = tr.step();
  const double energy = wr.dot(G.cwiseAbs2() * wc);

  std::vector<double> values(tau.count());
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < G.rows(); ++j) {
      const double t1 = tr.value(static_cast<std::size_t>(j));
      const double col = (t1 + t - tc.start()) / dt;
      double line = 0.0;
      for (Eigen::Index k = 0; k < G.cols(); ++k) {
        const double t2 = tc.value(static_cast<std::size_t>(k));
        const double row = (t2 - t - tr.start()) / dt;
        cplx shifted = bilinear(G, row, col);
        if (dc != 0.0) shifted *= std::polar(1.0, -dc * (t2 - t1 - t));
        line += wc(k) * std::norm(G(j, k) - shifted);
      }
      acc += wr(j) * line;
    }
    values[n] = 0.25 * acc;
  }
  return InterferencePattern(tau, std::move(values), PatternKind::hom, 0.5 * energy);
}

IndistinguishabilityCurve::IndistinguishabilityCurve(double delta_omega) : delta_omega_(delta_omega) {
  if (!(delta_omega > 0.0)) throw std::invalid_argument("indistinguishability: delta_omega must be positive");
}

double IndistinguishabilityCurve::operator()(double tau) const {
  const double x = delta_omega_ * tau;
  return std::exp(-0.5 * x * x);
}

InterferencePattern hom_uncorrelated(const IndistinguishabilityCurve& curve, const Axis& tau) {
  std::vector<double> v(tau.count());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = 0.5 * (1.0 - curve(tau.value(n)));
  return InterferencePattern(tau, std::move(v), PatternKind::hom, 0.5);
}

InterferencePattern noon_pattern(const JointSpectralAmplitude& jsa, const Axis& tau) {
  const ExchangePair p = exchange_pair(jsa);
  const Eigen::MatrixXd a = p.weights.cwiseProduct(p.f.cwiseAbs2());
  const Eigen::MatrixXd b = p.weights.cwiseProduct(p.ft.cwiseAbs2());
  const Eigen::MatrixXd c = p.weights.cwiseProduct(p.f.cwiseProduct(p.ft.conjugate()).real());
  const double na = a.sum();
  const double nb = b.sum();

  std::vector<double> values(tau.count());
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    const Eigen::ArrayXd c1 = (p.w1.array() * t).cos();
    const Eigen::ArrayXd c2 = (p.w2.array() * t).cos();
    const Eigen::VectorXd s1 = (p.w1.array() * t).sin().matrix();
    const Eigen::VectorXd s2 = (p.w2.array() * t).sin().matrix();
    const Eigen::VectorXd plus1 = (2.0 + 2.0 * c1).matrix();
    const Eigen::VectorXd plus2 = (2.0 + 2.0 * c2).matrix();
    const Eigen::VectorXd minus1 = (2.0 - 2.0 * c1).matrix();
    const Eigen::VectorXd minus2 = (2.0 - 2.0 * c2).matrix();
    const double sum = plus1.dot(a * plus2) + minus1.dot(b * minus2) - 8.0 * s1.dot(c * s2);
    values[n] = sum / 16.0;
  }
  return InterferencePattern(tau, std::move(values), PatternKind::noon, 0.25 * (na + nb));
}

InterferencePattern noon_uncorrelated(const IndistinguishabilityCurve& curve, double omega, const Axis& tau) {
  if (!(omega > 0.0)) throw std::invalid_argument("noon_uncorrelated: omega must be positive");
  std::vector<double> v(tau.count());
  for (std::size_t n = 0; n < v.size(); ++n) {
    const double t = tau.value(n);
    v[n] = 0.5 * (1.0 + curve(t) * std::cos(2.0 * omega * t));
  }
  return InterferencePattern(tau, std::move(v), PatternKind::noon, 0.5);
}

InterferencePattern franson_pattern(const JointSpectralAmplitude& jsa, const Axis& offsets,
                                    const FransonDelays& delays) {
  const Axis& as = jsa.axis_s();
  const Axis& ai = jsa.axis_i();
  const Eigen::MatrixXd weighted =
      (trapezoid_weights(as) * trapezoid_weights(ai).transpose()).cwiseProduct(jsa.values().cwiseAbs2());
  Eigen::ArrayXd ws(as.count()), wi(ai.count());
  for (std::size_t j = 0; j < as.count(); ++j) ws(static_cast<Eigen::Index>(j)) = jsa.center_s() + as.value(j);
  for (std::size_t k = 0; k < ai.count(); ++k) wi(static_cast<Eigen::Index>(k)) = jsa.center_i() + ai.value(k);

  std::vector<double> values(offsets.count());
  for (std::size_t n = 0; n < offsets.count(); ++n) {
    const double dT = offsets.value(n);
    const double t1 = delays.base1 + dT;
    const double t2 = delays.mode == FransonDelays::Mode::common_delay ? t1 : delays.base2;
    const Eigen::VectorXd a = (1.0 + (ws * t1).cos()).matrix();
    const Eigen::VectorXd b = (1.0 + (wi * t2).cos()).matrix();
    values[n] = 0.25 * a.dot(weighted * b);
  }
  return InterferencePattern(offsets, std::move(values), PatternKind::franson_coincidence, 0.25 * weighted.sum());
}

InterferencePattern franson_singles(const SingleSpectrum& spectrum, const Axis& offsets, double base_delay) {
  if (spectrum.density.size() != spectrum.axis.count())
    throw std::invalid_argument("franson_singles: density size does not match axis");
  const double norm = integrate1(spectrum.axis, spectrum.density);
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("franson_singles: spectrum is not normalized (integral " + std::to_string(norm) + ")");
  const Eigen::VectorXd w = trapezoid_weights(spectrum.axis);
  std::vector<double> values(offsets.count());
  for (std::size_t n = 0; n < offsets.count(); ++n) {
    const double T = base_delay + offsets.value(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.density.size(); ++k) {
      const double om = spectrum.center + spectrum.axis.value(k);
      acc += w(static_cast<Eigen::Index>(k)) * spectrum.density[k] * (1.0 + std::cos(om * T));
    }
    values[n] = 0.5 * acc;
  }
  return InterferencePattern(offsets, std::move(values), PatternKind::franson_singles, 0.5 * norm);
}

}  // namespace qinterf
