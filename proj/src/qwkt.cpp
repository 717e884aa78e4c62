#include "qinterf/twofold.hpp"

#include <cmath>
#include <sstream>

namespace qinterf {

CorrelationFunction qwkt_forward(const SpectralMarginal& marginal, const Axis& tau) {
  if (marginal.density.size() != marginal.axis.count())
    throw std::invalid_argument("qwkt_forward: density size does not match axis");
  const Eigen::VectorXd w = trapezoid_weights(marginal.axis);
  CorrelationFunction g{tau, std::vector<cplx>(tau.count()),
                        marginal.kind == MarginalKind::sum_frequency ? CorrelationKind::g2_plus
                                                                     : CorrelationKind::g2_minus};
  for (std::size_t n = 0; n < tau.count(); ++n) {
    const double t = tau.value(n);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < marginal.density.size(); ++k)
      acc += w(static_cast<Eigen::Index>(k)) * marginal.density[k] * std::polar(1.0, -marginal.frequency(k) * t);
    g.values[n] = acc;
  }
  return g;
}

namespace {

// Rectangle rule in tau: on the centered band this is an exact DFT, so a
// constant G lands entirely in the zero-frequency bin.
std::vector<double> inverse_on(const CorrelationFunction& g2, const Axis& axis, double offset) {
  const double dt = g2.axis.step();
  std::vector<double> out(axis.count());
  for (std::size_t m = 0; m < axis.count(); ++m) {
    const double om = offset + axis.value(m);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < g2.values.size(); ++j) acc += g2.values[j] * std::polar(1.0, om * g2.axis.value(j));
    out[m] = std::max(0.0, (acc * dt / kTwoPi).real());
  }
  return out;
}

Axis full_band(const Axis& tau) {
  const std::size_t n = tau.count();
  const double step = kTwoPi / (static_cast<double>(n) * tau.step());
  return Axis(-static_cast<double>(n / 2) * step, step, n);
}

[[noreturn]] void violation(double bandwidth, double nyquist, const std::string& detail) {
  std::ostringstream msg;
  msg << "Nyquist violation: " << detail << "; spectral content reaches |w| ~ " << bandwidth
      << " rad/s but delay step allows |w| < " << nyquist << " rad/s";
  throw NyquistViolation(msg.str(), bandwidth, nyquist);
}

// Aliased spectra pile up at the band edges.
void check_band(const CorrelationFunction& g2, const Axis& band, const std::vector<double>& density) {
  const double nyquist = kPi / g2.axis.step();
  double total = 0.0, edge = 0.0, peak = 0.0;
  for (std::size_t m = 0; m < density.size(); ++m) {
    total += density[m];
    peak = std::max(peak, density[m]);
    if (std::abs(band.value(m)) > 0.9 * nyquist) edge += density[m];
  }
  if (total <= 0.0) return;
  if (edge / total > 1e-3) {
    double reach = 0.0;
    for (std::size_t m = 0; m < density.size(); ++m)
      if (density[m] > 1e-3 * peak) reach = std::max(reach, std::abs(band.value(m)));
    violation(reach, nyquist, "energy fraction " + std::to_string(edge / total) + " near the band edge");
  }
}

SpectralMarginal wrap(const CorrelationFunction& g2, const Axis& axis, double offset, std::vector<double> density) {
  return SpectralMarginal{axis, offset, std::move(density),
                          g2.kind == CorrelationKind::g2_plus ? MarginalKind::sum_frequency
                                                              : MarginalKind::difference_frequency};
}

void validate(const CorrelationFunction& g2) {
  if (g2.values.size() != g2.axis.count()) throw std::invalid_argument("qwkt_inverse: value count does not match axis");
  for (const cplx& v : g2.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("qwkt_inverse: non-finite G2");
}

}  // namespace

SpectralMarginal qwkt_inverse(const CorrelationFunction& g2) {
  validate(g2);
  const Axis band = full_band(g2.axis);
  std::vector<double> density = inverse_on(g2, band, 0.0);
  check_band(g2, band, density);
  return wrap(g2, band, 0.0, std::move(density));
}

SpectralMarginal qwkt_inverse(const CorrelationFunction& g2, const Axis& axis, double offset) {
  validate(g2);
  const double nyquist = kPi / g2.axis.step();
  const double reach = std::max(std::abs(offset + axis.start()), std::abs(offset + axis.last()));
  if (reach > nyquist) violation(reach, nyquist, "requested frequencies lie outside the alias-free band");
  const Axis band = full_band(g2.axis);
  check_band(g2, band, inverse_on(g2, band, 0.0));
  return wrap(g2, axis, offset, inverse_on(g2, axis, offset));
}

CorrelationFunction correlation_from_pattern(const InterferencePattern& pattern) {
  double sign = 0.0;
  CorrelationKind kind{};
  if (pattern.kind() == PatternKind::hom) {
    sign = -1.0;
    kind = CorrelationKind::g2_minus;
  } else if (pattern.kind() == PatternKind::noon) {
    sign = 1.0;
    kind = CorrelationKind::g2_plus;
  } else {
    throw std::invalid_argument("correlation_from_pattern: only hom and noon patterns carry a G2");
  }
  if (!(pattern.baseline() > 0.0)) throw std::invalid_argument("correlation_from_pattern: baseline must be positive");
  CorrelationFunction g{pattern.axis(), std::vector<cplx>(pattern.values().size()), kind};
  for (std::size_t n = 0; n < g.values.size(); ++n)
    g.values[n] = sign * (pattern.values()[n] / pattern.baseline() - 1.0);
  return g;
}

}  // namespace qinterf
