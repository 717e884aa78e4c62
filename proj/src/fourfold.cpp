#include "qinterf/fourfold.hpp"

#include <cmath>

namespace qinterf {

namespace {

double absolute_signal_start(const JointSpectralAmplitude& j) { return j.center_s() + j.axis_s().start(); }

Eigen::MatrixXcd place(const JointSpectralAmplitude& j, Eigen::Index row0, Eigen::Index rows) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, j.values().cols());
  out.block(row0, 0, j.values().rows(), j.values().cols()) = j.values();
  return out;
}

Axis union_axis(const JointSpectralAmplitude& a, const JointSpectralAmplitude& b, long& off_a, long& off_b) {
  const double h = a.axis_s().step();
  if (std::abs(b.axis_s().step() - h) > 1e-12 * h)
    throw std::invalid_argument("source pair: signal axes have different steps");
  const double shift = (absolute_signal_start(b) - absolute_signal_start(a)) / h;
  if (std::abs(shift - std::round(shift)) > 1e-6)
    throw std::invalid_argument("source pair: signal lattices are offset by a non-integer number of steps");
  const long d = std::lround(shift);
  const long na = static_cast<long>(a.axis_s().count());
  const long nb = static_cast<long>(b.axis_s().count());
  const long lo = std::min(0L, d);
  const long hi = std::max(na, d + nb);
  off_a = -lo;
  off_b = d - lo;
  return Axis(a.axis_s().start() + static_cast<double>(lo) * h, h, static_cast<std::size_t>(hi - lo));
}

}  // namespace

SourcePair::SourcePair(JointSpectralAmplitude jsa1, JointSpectralAmplitude jsa2)
    : jsa1_(std::move(jsa1)), jsa2_(std::move(jsa2)), signal_axis_(jsa1_.axis_s()) {
  long o1 = 0, o2 = 0;
  signal_axis_ = union_axis(jsa1_, jsa2_, o1, o2);
  const auto rows = static_cast<Eigen::Index>(signal_axis_.count());
  f1_ = place(jsa1_, o1, rows);
  f2_ = place(jsa2_, o2, rows);
}

namespace {

void check_delays(const SourcePair& pair, const Axis& tau) {
  const double limit = pair.max_delay();
  if (std::abs(tau.start()) > limit || std::abs(tau.last()) > limit)
    throw std::invalid_argument("fourfold: |tau| exceeds the alias-free limit pi/step = " + std::to_string(limit));
}

double weighted_norm(const Eigen::MatrixXcd& f, const Eigen::VectorXd& ws, const Eigen::VectorXd& wi) {
  return ws.dot(f.cwiseAbs2() * wi);
}

std::vector<double> direct(const SourcePair& p, const Axis& tau) {
  const Axis& as = p.signal_axis();
  const std::array<Axis, 4> axes{as, p.idler_axis1(), as, p.idler_axis2()};
  const double points = static_cast<double>(as.count()) * static_cast<double>(as.count()) *
                        static_cast<double>(axes[1].count()) * static_cast<double>(axes[3].count());
  if (points > kMaxDirectPoints)
    throw GuardViolation("fourfold direct quadrature: " + std::to_string(static_cast<long long>(points)) +
                         " grid points exceed the 64^4 limit");
  const Eigen::MatrixXcd& f1 = p.f1();
  const Eigen::MatrixXcd& f2 = p.f2();
  std::vector<double> out(tau.count());
  Eigen::VectorXcd e(static_cast<Eigen::Index>(as.count()));
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    for (std::size_t s = 0; s < as.count(); ++s)
      e(static_cast<Eigen::Index>(s)) = std::polar(1.0, -(p.signal_center() + as.value(s)) * t);
    out[n] = 0.25 * integrate4(axes, [&](std::size_t s1, std::size_t i1, std::size_t s2, std::size_t i2) {
      const auto a = static_cast<Eigen::Index>(s1), b = static_cast<Eigen::Index>(i1);
      const auto c = static_cast<Eigen::Index>(s2), d = static_cast<Eigen::Index>(i2);
      return std::norm(f1(a, b) * f2(c, d) - f1(c, b) * f2(a, d) * e(c) * std::conj(e(a)));
    });
  }
  return out;
}

struct Modes {
  Eigen::VectorXd weights;  // squared singular values, retained
  Eigen::MatrixXcd u;       // signal modes, orthonormal in the plain inner product
  double truncation = 0.0;
};

Modes schmidt_modes(const Eigen::MatrixXcd& f, const Eigen::VectorXd& ws, const Eigen::VectorXd& wi, int rank) {
  const Eigen::MatrixXcd m = ws.cwiseSqrt().asDiagonal() * f * wi.cwiseSqrt().asDiagonal();
  const SvdResult r = svd(m);
  const Eigen::Index keep = std::min<Eigen::Index>(rank, r.singular_values.size());
  const Eigen::VectorXd all = r.singular_values.cwiseAbs2();
  Modes out{all.head(keep), r.left.leftCols(keep), 0.0};
  const double total = all.sum();
  out.truncation = total > 0.0 ? std::max(0.0, 1.0 - out.weights.sum() / total) : 0.0;
  return out;
}

}  // namespace

FourfoldResult fourfold_pattern(const SourcePair& pair, const Axis& tau, FourfoldMethod method) {
  check_delays(pair, tau);
  const Eigen::VectorXd ws = trapezoid_weights(pair.signal_axis());
  const double n1 = weighted_norm(pair.f1(), ws, trapezoid_weights(pair.idler_axis1()));
  const double n2 = weighted_norm(pair.f2(), ws, trapezoid_weights(pair.idler_axis2()));
  const double baseline = 0.5 * n1 * n2;

  if (method.kind == FourfoldMethod::Kind::direct)
    return {InterferencePattern(tau, direct(pair, tau), PatternKind::fourfold, baseline), 0.0};

  if (method.rank < 1) throw std::invalid_argument("fourfold: Schmidt rank must be at least 1");
  const Modes m1 = schmidt_modes(pair.f1(), ws, trapezoid_weights(pair.idler_axis1()), method.rank);
  const Modes m2 = schmidt_modes(pair.f2(), ws, trapezoid_weights(pair.idler_axis2()), method.rank);
  const double a = m1.weights.sum() * m2.weights.sum();
  const Axis& as = pair.signal_axis();
  const Eigen::MatrixXcd u2c = m2.u.conjugate();

  std::vector<double> values(tau.count());
  Eigen::VectorXcd e(static_cast<Eigen::Index>(as.count()));
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    for (std::size_t s = 0; s < as.count(); ++s)
      e(static_cast<Eigen::Index>(s)) = std::polar(1.0, -(pair.signal_center() + as.value(s)) * t);
    const Eigen::MatrixXcd overlap = m1.u.transpose() * e.asDiagonal() * u2c;
    const double c = m1.weights.dot(overlap.cwiseAbs2() * m2.weights);
    values[n] = 0.5 * (a - c);
  }
  return {InterferencePattern(tau, std::move(values), PatternKind::fourfold, baseline),
          std::max(m1.truncation, m2.truncation)};
}

double fourfold_visibility(const SourcePair& pair, FourfoldMethod method) {
  const FourfoldResult r = fourfold_pattern(pair, Axis(0.0, 1e-9 * pair.max_delay(), 2), method);
  const double p_inf = r.pattern.baseline();
  if (!(p_inf > 0.0)) throw std::invalid_argument("fourfold_visibility: vanishing baseline");
  return (p_inf - r.pattern.values().front()) / p_inf;
}

}  // namespace qinterf
