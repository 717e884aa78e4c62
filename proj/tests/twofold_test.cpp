#include "oracles.hpp"
#include "qinterf/twofold.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qinterf;

namespace {

constexpr double kCenter = 50.0;

JointSpectralAmplitude gaussian(double sp, double sm, std::size_t n = 128, double cs = kCenter, double ci = kCenter) {
  const Axis a = centered_axis(8.0 * gaussian_single_photon_width(sp, sm), n);
  return gaussian_jsa(sp, sm, cs, ci, a, a);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST(InterferencePattern, ClampsRoundOffAndRejectsOutOfRange) {
  const Axis a(0.0, 1.0, 3);
  const InterferencePattern p(a, {-1e-12, 0.5, 1.0 + 1e-12}, PatternKind::hom, 0.5);
  EXPECT_EQ(p.values().front(), 0.0);
  EXPECT_EQ(p.values().back(), 1.0);
  EXPECT_NEAR(p.visibility(), visibility_of(p.values()), 1e-12);
  EXPECT_THROW(InterferencePattern(a, {0.1, 1.1, 0.2}, PatternKind::hom, 0.5), std::domain_error);
  EXPECT_THROW(InterferencePattern(a, {0.1, 0.2}, PatternKind::hom, 0.5), std::invalid_argument);
}

TEST(InterferencePattern, KindNamesRoundTrip) {
  for (auto k : {PatternKind::hom, PatternKind::noon, PatternKind::franson_coincidence, PatternKind::franson_singles,
                 PatternKind::fourfold, PatternKind::fock_scan})
    EXPECT_EQ(pattern_kind_from_string(to_string(k)), k);
  EXPECT_THROW(pattern_kind_from_string("nope"), std::invalid_argument);
}

TEST(Hom, SeparableGaussianMatchesClosedForm) {
  const double dw = 1.3;
  const JointSpectralAmplitude j = gaussian(dw, dw, 128);
  const Axis tau = linspace(-5.0 / dw, 5.0 / dw, 61);
  const InterferencePattern p = hom_pattern(j, tau);
  for (std::size_t k = 0; k < tau.count(); ++k) EXPECT_NEAR(p.values()[k], oracle::hom_gaussian(dw, tau.value(k)), 1e-4);
  EXPECT_NEAR(p.baseline(), 0.5, 1e-8);
}

TEST(Hom, AgreesWithUncorrelatedModel) {
  const double dw = 0.8;
  const Axis tau = linspace(-6.0, 6.0, 41);
  const InterferencePattern a = hom_pattern(gaussian(dw, dw), tau);
  const InterferencePattern b = hom_uncorrelated(IndistinguishabilityCurve(dw), tau);
  EXPECT_LT(max_abs_diff(a.values(), b.values()), 1e-4);
}

TEST(Hom, MatchesBruteForceDefinition) {
  std::mt19937_64 rng(31);
  const Axis tau = linspace(-3.0, 3.0, 7);
  for (int t = 0; t < 3; ++t) {
    const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(10.0, 48), kCenter, kCenter);
    const InterferencePattern p = hom_pattern(j, tau);
    for (std::size_t k = 0; k < tau.count(); ++k) EXPECT_NEAR(p.values()[k], oracle::hom_brute(j, tau.value(k)), 1e-12);
  }
}

TEST(Hom, SymmetryDichotomyAndBaseline) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 3; ++t) {
    // far delay: well past the coherence time, well short of the 2pi/h grid revival
    const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(12.0, 128), kCenter, kCenter);
    const Axis tau(0.0, 15.0, 2);
    const InterferencePattern s = hom_pattern(symmetrized(j), tau);
    EXPECT_NEAR(s.values()[0], 0.0, 1e-8);
    EXPECT_NEAR(s.values()[1], 0.5, 1e-3);
    EXPECT_NEAR(hom_pattern(antisymmetrized(j), tau).values()[0], 1.0, 1e-6);
  }
}

TEST(Hom, EvenInDelayForRealSymmetricAmplitude) {
  const JointSpectralAmplitude j = gaussian(0.7, 2.1);
  const Axis tau = linspace(-4.0, 4.0, 81);
  const InterferencePattern p = hom_pattern(j, tau);
  for (std::size_t k = 0; k < tau.count(); ++k) EXPECT_NEAR(p.values()[k], p.values()[tau.count() - 1 - k], 1e-10);
}

TEST(Hom, NonDegenerateCentersBeat) {
  // symmetrized two-colour amplitude: lumps at (+d, -d) and (-d, +d)
  const double d = 3.0;
  const Axis a = centered_axis(12.0, 128);
  const auto j = jsa_from_function(a, a, kCenter, kCenter, [d](double s, double i) {
    auto g = [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); };
    return cplx(g(s - d, i + d) + g(s + d, i - d));
  });
  const InterferencePattern p = hom_pattern(j, linspace(-1.0, 1.0, 201));
  // P(tau) = 1/2 [1 - e^{-tau^2} cos(2 d tau)]-like; the beat makes it exceed 1/2
  EXPECT_NEAR(p.values()[100], 0.0, 1e-8);
  EXPECT_GT(*std::max_element(p.values().begin(), p.values().end()), 0.5 + 0.1);
}

TEST(Hom, OffsetCentersUseInterpolatedExchange) {
  // identical centers but a fractional relative offset: still a valid probability
  const Axis a = centered_axis(10.0, 256);
  const JointSpectralAmplitude j = gaussian_jsa(1.0, 1.0, kCenter + 0.37, kCenter, a, a);
  const InterferencePattern p = hom_pattern(j, linspace(-6.0, 6.0, 49));
  for (double v : p.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  // bilinear resampling of the exchanged amplitude costs O(h^2) norm
  EXPECT_NEAR(p.baseline(), 0.5, 1e-3);
}

TEST(Hom, RejectsMismatchedSteps) {
  const Axis a = centered_axis(10.0, 64), b = centered_axis(10.0, 32);
  const JointSpectralAmplitude j = gaussian_jsa(1.0, 1.0, kCenter, kCenter, a, b);
  EXPECT_THROW(hom_pattern(j, linspace(0.0, 1.0, 3)), std::invalid_argument);
}

TEST(HomTemporal, AgreesWithFrequencyEngine) {
  std::mt19937_64 rng(41);
  const Axis tau = linspace(-4.0, 4.0, 33);
  for (int t = 0; t < 3; ++t) {
    const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(12.0, 128), kCenter, kCenter);
    const InterferencePattern f = hom_pattern(j, tau);
    const InterferencePattern g = hom_pattern_temporal(to_temporal(j, 8), tau);
    EXPECT_LT(max_abs_diff(f.values(), g.values()), 1e-3);
  }
}

TEST(HomTemporal, ZeroAtOriginAndEvenForSymmetricAmplitude) {
  const JointSpectralAmplitude j = gaussian(0.8, 1.6);
  const Axis tau = linspace(-3.0, 3.0, 31);
  const InterferencePattern p = hom_pattern_temporal(to_temporal(j, 2), tau);
  EXPECT_NEAR(p.values()[15], 0.0, 1e-6);
  for (std::size_t k = 0; k < tau.count(); ++k) EXPECT_NEAR(p.values()[k], p.values()[tau.count() - 1 - k], 1e-10);
}

TEST(HomTemporal, RejectsDelaysBeyondSupport) {
  const JointTemporalAmplitude jt = to_temporal(gaussian(1.0, 1.0, 32));
  const double span = jt.grid().axis_row().last() - jt.grid().axis_row().start();
  EXPECT_THROW(hom_pattern_temporal(jt, linspace(0.0, span, 3)), std::invalid_argument);
}

TEST(SpectrallyResolvedHom, IntegratesToPattern) {
  std::mt19937_64 rng(43);
  const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(12.0, 64), kCenter, kCenter);
  for (double tau : {0.0, 0.4, 1.5, -2.0}) {
    const RealGrid2 d = spectrally_resolved_hom(j, tau);
    EXPECT_NEAR(integrate2(d), hom_pattern(j, Axis(tau, 1.0, 2)).values()[0], 1e-10);
  }
}

TEST(SpectrallyResolvedHom, VanishesForSymmetricAtZeroDelay) {
  const RealGrid2 d = spectrally_resolved_hom(gaussian(0.5, 2.0), 0.0);
  EXPECT_LT(d.values().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SpectrallyResolvedHom, FringeSpacingAlongDifferenceFrequency) {
  // real separable f: D = 1/2 |f|^2 (1 - cos((w1 - w2) tau)), zeros every 2pi/tau in w1 - w2
  const double tau = 6.0;
  const JointSpectralAmplitude j = gaussian(1.0, 1.0, 256);
  const RealGrid2 d = spectrally_resolved_hom(j, tau);
  const auto n = static_cast<Eigen::Index>(j.axis_s().count());
  const double h = j.axis_s().step();
  std::vector<double> zeros;  // positions of local minima along the anti-diagonal
  std::vector<double> line;
  for (Eigen::Index m = -n / 2 + 1; m < n / 2; ++m) line.push_back(d.values()(n / 2 + m, n / 2 - m));
  for (std::size_t k = 1; k + 1 < line.size(); ++k)
    if (line[k] <= line[k - 1] && line[k] < line[k + 1]) zeros.push_back(2.0 * h * (static_cast<double>(k) - (n / 2 - 1)));
  ASSERT_GE(zeros.size(), 3u);
  for (std::size_t k = 1; k < zeros.size(); ++k) EXPECT_NEAR(zeros[k] - zeros[k - 1], kTwoPi / tau, 2.0 * h);
}

TEST(Noon, UnityAtZeroDelayForSymmetricAmplitudes) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 3; ++t) {
    const JointSpectralAmplitude j = symmetrized(oracle::random_jsa(rng, centered_axis(12.0, 64), kCenter, kCenter));
    EXPECT_NEAR(noon_pattern(j, Axis(0.0, 1.0, 2)).values()[0], 1.0, 1e-8);
  }
}

TEST(Noon, AgreesWithUncorrelatedModel) {
  const double dw = 0.9;
  const Axis tau = linspace(-5.0, 5.0, 401);
  const InterferencePattern a = noon_pattern(gaussian(dw, dw), tau);
  const InterferencePattern b = noon_uncorrelated(IndistinguishabilityCurve(dw), kCenter, tau);
  EXPECT_LT(max_abs_diff(a.values(), b.values()), 1e-3);
  EXPECT_NEAR(a.baseline(), 0.5, 1e-8);
}

TEST(Noon, FringePeriodIsHalfTheSinglePhotonPeriod) {
  // near tau = 0 the envelope is flat: maxima are spaced pi / center
  const JointSpectralAmplitude j = gaussian(0.05, 0.05, 64);
  const Axis tau = linspace(-0.2, 0.2, 4001);
  const InterferencePattern p = noon_pattern(j, tau);
  std::vector<double> peaks;
  for (std::size_t k = 1; k + 1 < tau.count(); ++k)
    if (p.values()[k] > p.values()[k - 1] && p.values()[k] >= p.values()[k + 1]) peaks.push_back(tau.value(k));
  ASSERT_GE(peaks.size(), 3u);
  for (std::size_t k = 1; k < peaks.size(); ++k) EXPECT_NEAR(peaks[k] - peaks[k - 1], kPi / kCenter, 2.0 * tau.step());
}

TEST(Noon, BaselineAtTenCoherenceTimes) {
  std::mt19937_64 rng(53);
  const JointSpectralAmplitude j = symmetrized(oracle::random_jsa(rng, centered_axis(12.0, 128), kCenter, kCenter));
  const InterferencePattern p = noon_pattern(j, linspace(15.0, 16.0, 21));
  for (double v : p.values()) EXPECT_NEAR(v, 0.5, 1e-3);
}

TEST(Indistinguishability, CurveProperties) {
  const IndistinguishabilityCurve c(2.0);
  EXPECT_EQ(c(0.0), 1.0);
  for (double t : {0.1, 0.5, 2.0}) {
    EXPECT_EQ(c(t), c(-t));
    EXPECT_GE(c(t), 0.0);
    EXPECT_LE(c(t), 1.0);
  }
  EXPECT_THROW(IndistinguishabilityCurve(0.0), std::invalid_argument);
  const InterferencePattern h = hom_uncorrelated(c, Axis(0.0, 100.0, 2));
  EXPECT_EQ(h.values()[0], 0.0);
  EXPECT_NEAR(h.values()[1], 0.5, 1e-15);
  const InterferencePattern n = noon_uncorrelated(c, 3.0, Axis(0.0, 100.0, 2));
  EXPECT_EQ(n.values()[0], 1.0);
  EXPECT_NEAR(n.values()[1], 0.5, 1e-15);
}

TEST(Franson, UnityAtZeroDelays) {
  std::mt19937_64 rng(59);
  const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(12.0, 64), kCenter, kCenter);
  EXPECT_NEAR(franson_pattern(j, Axis(0.0, 1.0, 2), FransonDelays::common(0.0)).values()[0], 1.0, 1e-8);
  EXPECT_NEAR(franson_pattern(j, Axis(0.0, 1.0, 2), FransonDelays::independent(0.0, 0.0)).values()[0], 1.0, 1e-8);
}

TEST(Franson, NarrowbandLimitIndependentPhases) {
  const double cs = 60.0, ci = 40.0;
  const JointSpectralAmplitude j = gaussian(1e-3, 1e-3, 64, cs, ci);
  const double t2 = 0.3;
  const Axis offsets = linspace(0.0, 0.5, 51);
  const InterferencePattern p = franson_pattern(j, offsets, FransonDelays::independent(1.0, t2));
  for (std::size_t k = 0; k < offsets.count(); ++k) {
    const double t1 = 1.0 + offsets.value(k);
    EXPECT_NEAR(p.values()[k], 0.25 * (1.0 + std::cos(cs * t1)) * (1.0 + std::cos(ci * t2)), 1e-3);
  }
}

TEST(Franson, SinglesLimits) {
  const double sigma = 0.5;
  const SingleSpectrum s = gaussian_spectrum(sigma, kCenter, centered_axis(8.0 * sigma, 256));
  EXPECT_NEAR(franson_singles(s, Axis(0.0, 1.0, 2)).values()[0], 1.0, 1e-10);
  // 10 coherence times and beyond
  const InterferencePattern far = franson_singles(s, linspace(0.0, 0.5, 51), 10.0 / sigma);
  for (double v : far.values()) EXPECT_NEAR(v, 0.5, 1e-3);
  // narrowband
  const SingleSpectrum nb = gaussian_spectrum(1e-4, kCenter, centered_axis(8e-4, 64));
  const Axis t = linspace(0.0, 1.0, 101);
  const InterferencePattern p = franson_singles(nb, t);
  for (std::size_t k = 0; k < t.count(); ++k) EXPECT_NEAR(p.values()[k], 0.5 * (1.0 + std::cos(kCenter * t.value(k))), 1e-6);
  SingleSpectrum bad = s;
  bad.density[128] += 1.0;
  EXPECT_THROW(franson_singles(bad, t), std::invalid_argument);
}

TEST(Patterns, ValuesAreProbabilitiesForRandomAmplitudes) {
  std::mt19937_64 rng(61);
  const Axis tau = linspace(-5.0, 5.0, 51);
  for (int t = 0; t < 5; ++t) {
    const double ci = kCenter + 0.25 * t;  // non-degenerate on the grid lattice for some draws
    const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(12.0, 64), kCenter, ci);
    for (const auto& p : {hom_pattern(j, tau), noon_pattern(j, tau),
                          franson_pattern(j, tau, FransonDelays::common(3.0)),
                          franson_pattern(j, tau, FransonDelays::independent(1.0, 2.0))})
      for (double v : p.values()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
  }
}

TEST(Qwkt, ForwardOfGaussianMarginal) {
  // separable Gaussian: difference marginal std s = sqrt2 * per-axis std
  const double sigma = 1.0;
  const JointSpectralAmplitude j = gaussian(std::sqrt(2.0) * sigma, std::sqrt(2.0) * sigma, 256);
  const SpectralMarginal m = marginal(j, MarginalKind::difference_frequency);
  const double s = std::sqrt(2.0) * sigma;
  const Axis tau = linspace(-3.0, 3.0, 61);
  const CorrelationFunction g = qwkt_forward(m, tau);
  EXPECT_EQ(g.kind, CorrelationKind::g2_minus);
  for (std::size_t k = 0; k < tau.count(); ++k) {
    EXPECT_NEAR(std::abs(g.values[k]), std::exp(-0.5 * s * s * tau.value(k) * tau.value(k)), 1e-4);
    EXPECT_LE(std::abs(g.values[k]), 1.0 + 1e-9);
    EXPECT_NEAR(std::abs(g.values[k] - std::conj(g.values[tau.count() - 1 - k])), 0.0, 1e-12);
  }
  EXPECT_NEAR(g.values[30].real(), 1.0, 1e-8);
}

TEST(Qwkt, ForwardReproducesHomAndNoon) {
  std::mt19937_64 rng(67);
  const JointSpectralAmplitude j = symmetrized(oracle::random_jsa(rng, centered_axis(12.0, 128), kCenter, kCenter));
  const Axis tau = linspace(-4.0, 4.0, 81);
  const CorrelationFunction gm = qwkt_forward(marginal(j, MarginalKind::difference_frequency), tau);
  const CorrelationFunction gp = qwkt_forward(marginal(j, MarginalKind::sum_frequency), tau);
  const InterferencePattern hom = hom_pattern(j, tau);
  const InterferencePattern noon = noon_pattern(j, tau);
  for (std::size_t k = 0; k < tau.count(); ++k) {
    EXPECT_NEAR(0.5 * (1.0 - gm.values[k].real()), hom.values()[k], 1e-3);
    EXPECT_NEAR(0.5 * (1.0 + gp.values[k].real()), noon.values()[k], 1e-3);
  }
}

TEST(Qwkt, RoundTripGaussian) {
  // the sampled marginal's transform repeats every 2pi/h in tau, so the
  // delay span has to stay inside one period: fine grid, band set by content
  const double sp = 0.8, sm = 2.0;
  const JointSpectralAmplitude j = gaussian(sp, sm, 512);
  for (auto kind : {MarginalKind::difference_frequency, MarginalKind::sum_frequency}) {
    const SpectralMarginal m = marginal(j, kind);
    const double content = 9.0 * (kind == MarginalKind::sum_frequency ? sp : sm);
    const double dt = 0.9 * kPi / (std::abs(m.offset) + content);
    ASSERT_LT(1024.0 * dt, kTwoPi / m.axis.step());
    const Axis tau(-512.0 * dt, dt, 1024);
    // compare inside the alias-free band only
    std::size_t lo = 0;
    while (m.axis.value(lo) < -0.95 * content) ++lo;
    const std::size_t n = 2 * (m.axis.count() / 2 - lo);
    const Axis window(m.axis.value(lo), m.axis.step(), n);
    const std::vector<double> ref(m.density.begin() + static_cast<std::ptrdiff_t>(lo),
                                  m.density.begin() + static_cast<std::ptrdiff_t>(lo + n));
    const SpectralMarginal back = qwkt_inverse(qwkt_forward(m, tau), window, m.offset);
    EXPECT_LT(rel_l2(back.density, ref), 1e-3);
    EXPECT_EQ(back.kind, kind);
  }
}

TEST(Qwkt, CombPeaksRecovered) {
  const Axis a = centered_axis(16.0, 256);
  const JointSpectralAmplitude base = gaussian_jsa(0.5, 0.5, kCenter, kCenter, a, a);
  const JointSpectralAmplitude c = comb_jsa(base, 2, 3.0).jsa;
  const SpectralMarginal m = marginal(c, MarginalKind::difference_frequency);
  const Axis tau(-512.0 * 0.05, 0.05, 1024);
  const SpectralMarginal back = qwkt_inverse(qwkt_forward(m, tau));
  std::vector<double> peaks;
  const double top = *std::max_element(back.density.begin(), back.density.end());
  for (std::size_t k = 1; k + 1 < back.density.size(); ++k)
    if (back.density[k] > back.density[k - 1] && back.density[k] >= back.density[k + 1] && back.density[k] > 0.1 * top)
      peaks.push_back(back.frequency(k));
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_NEAR(peaks[0], -3.0, back.axis.step());
  EXPECT_NEAR(peaks[1], 3.0, back.axis.step());
}

TEST(Qwkt, ConstantCorrelationGivesCentralDelta) {
  const Axis tau(-64.0 * 0.1, 0.1, 128);
  const CorrelationFunction g{tau, std::vector<cplx>(128, cplx(1.0)), CorrelationKind::g2_minus};
  const SpectralMarginal m = qwkt_inverse(g);
  EXPECT_NEAR(m.axis.value(64), 0.0, 1e-12);
  const double total = std::accumulate(m.density.begin(), m.density.end(), 0.0);
  EXPECT_NEAR(m.density[64] / total, 1.0, 1e-10);
}

TEST(Qwkt, NyquistViolationReported) {
  const JointSpectralAmplitude j = gaussian(1.0, 1.0, 128);
  const SpectralMarginal m = marginal(j, MarginalKind::difference_frequency);
  // band limit pi/dt = 2 while the spectrum reaches ~ +-5
  const Axis tau(-256.0 * kPi / 2.0, kPi / 2.0, 512);
  try {
    qwkt_inverse(qwkt_forward(m, tau));
    FAIL() << "no violation";
  } catch (const NyquistViolation& e) {
    EXPECT_NEAR(e.nyquist_limit(), 2.0, 1e-12);
    EXPECT_GT(e.bandwidth_estimate(), 1.5);
  }
  // target axis outside the band
  const Axis fine(-1024.0 * 0.05, 0.05, 2048);
  EXPECT_THROW(qwkt_inverse(qwkt_forward(m, fine), centered_axis(100.0, 64), 0.0), NyquistViolation);
}

TEST(Qwkt, CorrelationFromPatternSigns) {
  const Axis a(0.0, 1.0, 2);
  const CorrelationFunction h = correlation_from_pattern(InterferencePattern(a, {0.0, 0.5}, PatternKind::hom, 0.5));
  EXPECT_EQ(h.kind, CorrelationKind::g2_minus);
  EXPECT_NEAR(h.values[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(h.values[1].real(), 0.0, 1e-15);
  const CorrelationFunction n = correlation_from_pattern(InterferencePattern(a, {1.0, 0.5}, PatternKind::noon, 0.5));
  EXPECT_EQ(n.kind, CorrelationKind::g2_plus);
  EXPECT_NEAR(n.values[0].real(), 1.0, 1e-15);
  EXPECT_THROW(correlation_from_pattern(InterferencePattern(a, {1.0, 0.5}, PatternKind::franson_coincidence, 0.25)),
               std::invalid_argument);
}
