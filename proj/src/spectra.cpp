#include "qinterf/spectra.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qinterf {

JointSpectralAmplitude JointSpectralAmplitude::normalized(Grid2 grid, double center_s, double center_i) {
  if (!(center_s > 0.0) || !(center_i > 0.0) || !std::isfinite(center_s) || !std::isfinite(center_i))
    throw std::invalid_argument("jsa: center frequencies must be finite and positive");
  const double energy = grid_energy(grid);
  if (!(energy > 0.0)) throw std::invalid_argument("degenerate amplitude");
  const double factor = 1.0 / std::sqrt(energy);
  Grid2 scaled(grid.axis_row(), grid.axis_col(), grid.values() * factor);
  return JointSpectralAmplitude(std::move(scaled), center_s, center_i, factor);
}

JointSpectralAmplitude jsa_from_function(const Axis& axis_s, const Axis& axis_i, double center_s,
                                         double center_i, const JsaFunction& fn) {
  Eigen::MatrixXcd v(axis_s.count(), axis_i.count());
  for (std::size_t j = 0; j < axis_s.count(); ++j)
    for (std::size_t k = 0; k < axis_i.count(); ++k) v(j, k) = fn(axis_s.value(j), axis_i.value(k));
  return JointSpectralAmplitude::normalized(Grid2(axis_s, axis_i, std::move(v)), center_s, center_i);
}

double gaussian_single_photon_width(double sigma_plus, double sigma_minus) {
  return 0.5 * std::hypot(sigma_plus, sigma_minus);
}

JointSpectralAmplitude gaussian_jsa(double sigma_plus, double sigma_minus, double center_s,
                                    double center_i, const Axis& axis_s, const Axis& axis_i) {
  if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0))
    throw std::invalid_argument("gaussian_jsa: sigma_plus and sigma_minus must be positive");
  const double support = 6.0 * gaussian_single_photon_width(sigma_plus, sigma_minus);
  for (const Axis* a : {&axis_s, &axis_i}) {
    const double reach = std::min(-a->start(), a->last());
    if (reach < support * (1.0 - 1e-9))
      throw GuardViolation("gaussian_jsa: grid too small for 6 sigma support (needs +-" + std::to_string(support) +
                           " rad/s, has +-" + std::to_string(reach) + ")");
  }
  const double ap = 1.0 / (4.0 * sigma_plus * sigma_plus);
  const double am = 1.0 / (4.0 * sigma_minus * sigma_minus);
  return jsa_from_function(axis_s, axis_i, center_s, center_i, [=](double ns, double ni) {
    const double p = ns + ni;
    const double m = ns - ni;
    return cplx(std::exp(-ap * p * p - am * m * m), 0.0);
  });
}

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// Samples of `m` displaced by (drow, dcol) index units: out(j,k) = m(j - drow, k - dcol).
// Integer shifts copy samples; fractional ones use the Fourier shift theorem
// on power-of-two grids (exact for band-limited samples) and bilinear
// interpolation otherwise.
Eigen::MatrixXcd displaced(const Eigen::MatrixXcd& m, double drow, double dcol) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  if (near_integer(drow) && near_integer(dcol)) {
    const auto dr = static_cast<Eigen::Index>(std::lround(drow));
    const auto dc = static_cast<Eigen::Index>(std::lround(dcol));
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      const Eigen::Index sj = j - dr;
      if (sj < 0 || sj >= m.rows()) continue;
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        const Eigen::Index sk = k - dc;
        if (sk >= 0 && sk < m.cols()) out(j, k) = m(sj, sk);
      }
    }
    return out;
  }
  const auto nr = static_cast<std::size_t>(m.rows());
  const auto nc = static_cast<std::size_t>(m.cols());
  if (is_power_of_two(nr) && is_power_of_two(nc)) {
    const Axis ir(0.0, 1.0, nr), ic(0.0, 1.0, nc);
    Grid2 t = fft2(Grid2(ir, ic, m), FftSign::forward);
    Eigen::MatrixXcd v = t.values();
    for (Eigen::Index j = 0; j < v.rows(); ++j)
      for (Eigen::Index k = 0; k < v.cols(); ++k)
        v(j, k) *= std::polar(1.0, -(drow * t.axis_row().value(static_cast<std::size_t>(j)) +
                                     dcol * t.axis_col().value(static_cast<std::size_t>(k))));
    return fft2(Grid2(t.axis_row(), t.axis_col(), std::move(v)), FftSign::inverse, 0.0, 0.0).values();
  }
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      out(j, k) = bilinear(m, static_cast<double>(j) - drow, static_cast<double>(k) - dcol);
  return out;
}

// Fraction of |m|^2 that a (drow, dcol) displacement pushes off the grid.
double spill_fraction(const Eigen::MatrixXcd& m, double drow, double dcol) {
  const double rows = static_cast<double>(m.rows()) - 1.0;
  const double cols = static_cast<double>(m.cols()) - 1.0;
  double lost = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const double r = static_cast<double>(j) + drow;
      const double c = static_cast<double>(k) + dcol;
      if (r < -1e-9 || r > rows + 1e-9 || c < -1e-9 || c > cols + 1e-9) lost += std::norm(m(j, k));
    }
  return lost / m.squaredNorm();
}

}  // namespace

CombJsa comb_jsa(const JointSpectralAmplitude& base, int mode_count, double mode_spacing) {
  if (mode_count < 1) throw std::invalid_argument("comb_jsa: mode_count must be >= 1");
  if (mode_count > 1 && !(mode_spacing > 0.0)) throw std::invalid_argument("comb_jsa: mode_spacing must be positive");
  const Eigen::MatrixXcd& b = base.values();
  const double hs = base.axis_s().step();
  const double hi = base.axis_i().step();

  std::vector<Eigen::MatrixXcd> copies;
  copies.reserve(static_cast<std::size_t>(mode_count));
  for (int k = 0; k < mode_count; ++k) {
    const double d = (k - 0.5 * (mode_count - 1)) * mode_spacing;
    if (spill_fraction(b, d / hs, -d / hi) > 1e-6)
      throw GuardViolation("comb_jsa: displaced modes do not fit the grid (mode_count * mode_spacing too large)");
    copies.push_back(displaced(b, d / hs, -d / hi));
  }

  double max_overlap = 0.0;
  for (std::size_t k = 0; k + 1 < copies.size(); ++k) {
    const double ov = std::abs(copies[k].cwiseProduct(copies[k + 1].conjugate()).sum()) /
                      std::sqrt(copies[k].squaredNorm() * copies[k + 1].squaredNorm());
    max_overlap = std::max(max_overlap, ov);
  }

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(b.rows(), b.cols());
  for (const auto& c : copies) sum += c;
  auto jsa = JointSpectralAmplitude::normalized(Grid2(base.axis_s(), base.axis_i(), std::move(sum)),
                                                base.center_s(), base.center_i());
  return CombJsa{std::move(jsa), max_overlap, max_overlap > 1e-3};
}

JointTemporalAmplitude to_temporal(const JointSpectralAmplitude& jsa, int oversample) {
  if (oversample < 1 || !is_power_of_two(static_cast<std::size_t>(oversample)))
    throw std::invalid_argument("to_temporal: oversample must be a power of two");
  const Axis& as = jsa.axis_s();
  const Axis& ai = jsa.axis_i();
  if (!is_power_of_two(as.count()) || !is_power_of_two(ai.count()))
    throw std::invalid_argument("to_temporal: grid counts must be powers of two");
  if (oversample == 1) return {fft2(jsa.grid(), FftSign::forward), jsa.center_s(), jsa.center_i()};

  const auto os = static_cast<std::size_t>(oversample);
  const std::size_t ns = as.count() * os;
  const std::size_t ni = ai.count() * os;
  const std::size_t off_s = (ns - as.count()) / 2;
  const std::size_t off_i = (ni - ai.count()) / 2;
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(ni));
  padded.block(static_cast<Eigen::Index>(off_s), static_cast<Eigen::Index>(off_i), jsa.values().rows(),
               jsa.values().cols()) = jsa.values();
  const Axis ps(as.start() - static_cast<double>(off_s) * as.step(), as.step(), ns);
  const Axis pi(ai.start() - static_cast<double>(off_i) * ai.step(), ai.step(), ni);
  return {fft2(Grid2(ps, pi, std::move(padded)), FftSign::forward), jsa.center_s(), jsa.center_i()};
}

SchmidtAnalysis schmidt_analysis(const JointSpectralAmplitude& jsa) {
  const double w = std::sqrt(jsa.axis_s().step() * jsa.axis_i().step());
  const SvdResult dec = svd(jsa.values() * w);
  SchmidtAnalysis out;
  const Eigen::VectorXd lambda = dec.singular_values.array().square();
  const double total = lambda.sum();
  out.coefficients.reserve(static_cast<std::size_t>(lambda.size()));
  double purity = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double l = lambda(k) / total;
    out.coefficients.push_back(l);
    purity += l * l;
  }
  out.purity = purity;
  out.schmidt_number = 1.0 / purity;
  return out;
}

SpectralMarginal marginal(const JointSpectralAmplitude& jsa, MarginalKind kind) {
  const Axis& as = jsa.axis_s();
  const Axis& ai = jsa.axis_i();
  const double h = std::min(as.step(), ai.step());
  const Eigen::MatrixXd intensity = jsa.values().cwiseAbs2();

  // Rotated lattice: u = nu_s + nu_i, v = nu_s - nu_i.
  const double u0 = as.start() + ai.start();
  const double u1 = as.last() + ai.last();
  const double v0 = as.start() - ai.last();
  const double v1 = as.last() - ai.start();
  const bool sum = kind == MarginalKind::sum_frequency;
  const double outer0 = sum ? u0 : v0;
  const double outer1 = sum ? u1 : v1;
  const double inner0 = sum ? v0 : u0;
  const double inner1 = sum ? v1 : u1;

  auto lattice_count = [h](double a, double b) {
    return static_cast<std::size_t>(std::llround((b - a) / h)) + 1;
  };
  std::size_t n_outer = lattice_count(outer0, outer1);
  if (n_outer % 2 == 1) ++n_outer;
  const Axis outer(outer0, h, n_outer);
  const Axis inner(inner0, h, std::max<std::size_t>(2, lattice_count(inner0, inner1)));
  const Eigen::VectorXd w = trapezoid_weights(inner);

  std::vector<double> density(n_outer, 0.0);
  if (std::abs(as.step() - ai.step()) <= 1e-12 * h) {
    // every diagonal passes through grid nodes: along it u steps by 2h, and the Jacobian 1/2 cancels
    for (Eigen::Index j = 0; j < intensity.rows(); ++j)
      for (Eigen::Index k = 0; k < intensity.cols(); ++k) {
        const auto p = static_cast<std::size_t>(sum ? j + k : j + (intensity.cols() - 1 - k));
        density[p] += h * intensity(j, k);
      }
    const double offset = sum ? jsa.center_s() + jsa.center_i() : jsa.center_s() - jsa.center_i();
    return SpectralMarginal{outer, offset, std::move(density), kind};
  }
  for (std::size_t p = 0; p < n_outer; ++p) {
    const double x = outer.value(p);
    double acc = 0.0;
    for (std::size_t q = 0; q < inner.count(); ++q) {
      const double y = inner.value(q);
      const double u = sum ? x : y;
      const double v = sum ? y : x;
      const double row = (0.5 * (u + v) - as.start()) / as.step();
      const double col = (0.5 * (u - v) - ai.start()) / ai.step();
      acc += w(static_cast<Eigen::Index>(q)) * bilinear(intensity, row, col);
    }
    density[p] = 0.5 * acc;
  }
  const double offset = sum ? jsa.center_s() + jsa.center_i() : jsa.center_s() - jsa.center_i();
  return SpectralMarginal{outer, offset, std::move(density), kind};
}

SingleSpectrum signal_spectrum(const JointSpectralAmplitude& jsa) {
  const Eigen::VectorXd w = trapezoid_weights(jsa.axis_i());
  const Eigen::VectorXd rho = jsa.values().cwiseAbs2() * w;
  return SingleSpectrum{jsa.axis_s(), jsa.center_s(), std::vector<double>(rho.data(), rho.data() + rho.size())};
}

SingleSpectrum gaussian_spectrum(double sigma, double center, const Axis& axis) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_spectrum: sigma must be positive");
  std::vector<double> d(axis.count());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double x = axis.value(k) / sigma;
    d[k] = std::exp(-0.5 * x * x);
  }
  const double norm = integrate1(axis, d);
  for (double& x : d) x /= norm;
  return SingleSpectrum{axis, center, std::move(d)};
}

namespace {

void require_exchangeable(const JointSpectralAmplitude& jsa, const char* who) {
  if (!(jsa.axis_s() == jsa.axis_i()) || jsa.center_s() != jsa.center_i())
    throw std::invalid_argument(std::string(who) + ": requires identical signal/idler axes and centers");
}

}  // namespace

double exchange_symmetry_score(const JointSpectralAmplitude& jsa) {
  require_exchangeable(jsa, "exchange_symmetry_score");
  const Eigen::MatrixXcd& f = jsa.values();
  return (f - f.transpose()).squaredNorm() / f.squaredNorm();
}

JointSpectralAmplitude symmetrized(const JointSpectralAmplitude& jsa) {
  require_exchangeable(jsa, "symmetrized");
  Eigen::MatrixXcd v = jsa.values() + jsa.values().transpose();
  return JointSpectralAmplitude::normalized(Grid2(jsa.axis_s(), jsa.axis_i(), std::move(v)), jsa.center_s(),
                                            jsa.center_i());
}

JointSpectralAmplitude antisymmetrized(const JointSpectralAmplitude& jsa) {
  require_exchangeable(jsa, "antisymmetrized");
  Eigen::MatrixXcd v = jsa.values() - jsa.values().transpose();
  return JointSpectralAmplitude::normalized(Grid2(jsa.axis_s(), jsa.axis_i(), std::move(v)), jsa.center_s(),
                                            jsa.center_i());
}

}  // namespace qinterf
