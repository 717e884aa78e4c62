#include "oracles.hpp"
#include "qinterf/fourfold.hpp"

#include <gtest/gtest.h>

using namespace qinterf;

namespace {

constexpr double kCenter = 50.0;

JointSpectralAmplitude gaussian(double sp, double sm, std::size_t n, double cs = kCenter, double ci = kCenter) {
  const Axis a = centered_axis(8.0 * gaussian_single_photon_width(sp, sm), n);
  return gaussian_jsa(sp, sm, cs, ci, a, a);
}

// Heralded-signal purity from the reduced density matrix, plain loops.
double purity_oracle(const JointSpectralAmplitude& j) {
  const auto& f = j.values();
  auto w = [](const Axis& a, Eigen::Index k) {
    return (k == 0 || k == static_cast<Eigen::Index>(a.count()) - 1 ? 0.5 : 1.0) * a.step();
  };
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(f.rows(), f.rows());
  for (Eigen::Index s = 0; s < f.rows(); ++s)
    for (Eigen::Index t = 0; t < f.rows(); ++t)
      for (Eigen::Index i = 0; i < f.cols(); ++i) rho(s, t) += w(j.axis_i(), i) * f(s, i) * std::conj(f(t, i));
  double tr = 0.0, tr2 = 0.0;
  for (Eigen::Index s = 0; s < f.rows(); ++s) {
    tr += w(j.axis_s(), s) * rho(s, s).real();
    for (Eigen::Index t = 0; t < f.rows(); ++t) tr2 += w(j.axis_s(), s) * w(j.axis_s(), t) * std::norm(rho(s, t));
  }
  return tr2 / (tr * tr);
}

}  // namespace

TEST(SourcePair, BuildsUnionSignalAxis) {
  const Axis a = centered_axis(4.0, 16);
  const double h = a.step();
  const JointSpectralAmplitude j1 = gaussian_jsa(1.0, 1.0, kCenter, kCenter, centered_axis(8.0, 32), centered_axis(8.0, 32));
  const auto j2 = jsa_from_function(a, a, kCenter + 3.0 * h * 4.0, kCenter, [](double, double) { return cplx(1.0); });
  // j1 step is 0.5, j2 step is 0.5; j2 sits 12 steps up
  const SourcePair p(j1, j2);
  EXPECT_NEAR(p.signal_axis().step(), h, 1e-15);
  EXPECT_NEAR(p.signal_axis().start(), j1.axis_s().start(), 1e-12);
  EXPECT_NEAR(p.signal_axis().last(), 12.0 * h + a.last(), 1e-12);
  EXPECT_EQ(p.f1().cols(), 32);
  EXPECT_EQ(p.f2().cols(), 16);
  EXPECT_EQ(p.signal_center(), kCenter);
}

TEST(SourcePair, RejectsIncompatibleLattices) {
  const JointSpectralAmplitude j1 = gaussian(1.0, 1.0, 32);
  EXPECT_THROW(SourcePair(j1, gaussian(1.0, 1.0, 16)), std::invalid_argument);
  const Axis a = j1.axis_s();
  EXPECT_THROW(SourcePair(j1, gaussian_jsa(1.0, 1.0, kCenter + 0.3 * a.step(), kCenter, a, a)), std::invalid_argument);
}

TEST(Fourfold, SchmidtMatchesDirectAtFullRank) {
  std::mt19937_64 rng(71);
  const Axis a = centered_axis(10.0, 16);
  const Axis tau = linspace(-2.0, 2.0, 9);
  for (int t = 0; t < 3; ++t) {
    const SourcePair p(oracle::random_jsa(rng, a, kCenter, kCenter), oracle::random_jsa(rng, a, kCenter, kCenter + 1.0));
    const FourfoldResult d = fourfold_pattern(p, tau, FourfoldMethod::direct());
    const FourfoldResult s = fourfold_pattern(p, tau, FourfoldMethod::schmidt(16));
    EXPECT_NEAR(s.truncation_weight, 0.0, 1e-12);
    EXPECT_EQ(d.truncation_weight, 0.0);
    for (std::size_t k = 0; k < tau.count(); ++k) EXPECT_NEAR(s.pattern.values()[k], d.pattern.values()[k], 1e-10);
    EXPECT_NEAR(s.pattern.baseline(), d.pattern.baseline(), 1e-14);
  }
}

TEST(Fourfold, SwappingSourcesMirrorsDelay) {
  std::mt19937_64 rng(73);
  const Axis a = centered_axis(10.0, 32);
  const JointSpectralAmplitude j1 = oracle::random_jsa(rng, a, kCenter, kCenter);
  const JointSpectralAmplitude j2 = oracle::random_jsa(rng, a, kCenter, kCenter);
  const Axis tau = linspace(-3.0, 3.0, 13);
  const FourfoldResult ab = fourfold_pattern(SourcePair(j1, j2), tau, FourfoldMethod::schmidt(32));
  const FourfoldResult ba = fourfold_pattern(SourcePair(j2, j1), tau, FourfoldMethod::schmidt(32));
  for (std::size_t k = 0; k < tau.count(); ++k)
    EXPECT_NEAR(ab.pattern.values()[k], ba.pattern.values()[tau.count() - 1 - k], 1e-10);
}

TEST(Fourfold, IdenticalPureSourcesDipToZero) {
  const double sigma = 1.2;
  const JointSpectralAmplitude j = gaussian(sigma, sigma, 64);
  const SourcePair p(j, j);
  EXPECT_NEAR(fourfold_visibility(p), 1.0, 1e-8);
  const Axis tau = linspace(-4.0, 4.0, 33);
  const FourfoldResult r = fourfold_pattern(p, tau);
  // heralded signal: intensity std sigma / sqrt2, so P / P_inf = 1 - exp(-sigma^2 tau^2 / 2)
  for (std::size_t k = 0; k < tau.count(); ++k)
    EXPECT_NEAR(r.pattern.values()[k] / r.pattern.baseline(), 2.0 * oracle::hom_gaussian(sigma, tau.value(k)), 1e-6);
}

TEST(Fourfold, VisibilityEqualsPurityForIdenticalSources) {
  for (double ratio : {0.25, 0.5, 2.0, 3.0}) {
    const JointSpectralAmplitude j = gaussian(1.0, ratio, 64);
    const double v = fourfold_visibility(SourcePair(j, j), FourfoldMethod::schmidt(64));
    EXPECT_NEAR(v, oracle::gaussian_purity(1.0, ratio), 1e-4) << ratio;
    EXPECT_NEAR(v, purity_oracle(j), 1e-10) << ratio;
  }
  std::mt19937_64 rng(79);
  for (int t = 0; t < 3; ++t) {
    const JointSpectralAmplitude j = oracle::random_jsa(rng, centered_axis(10.0, 48), kCenter, kCenter);
    EXPECT_NEAR(fourfold_visibility(SourcePair(j, j), FourfoldMethod::schmidt(48)), purity_oracle(j), 1e-10);
  }
}

TEST(Fourfold, DisjointSourcesShowNoInterference) {
  const JointSpectralAmplitude j1 = gaussian(1.0, 1.0, 32);
  const double far = j1.axis_s().step() * 64.0;  // signal supports do not overlap
  const JointSpectralAmplitude j2 = gaussian_jsa(1.0, 1.0, kCenter + far, kCenter, j1.axis_s(), j1.axis_i());
  const SourcePair p(j1, j2);
  EXPECT_NEAR(fourfold_visibility(p), 0.0, 1e-12);
  const FourfoldResult r = fourfold_pattern(p, linspace(-2.0, 2.0, 5), FourfoldMethod::direct());
  for (double v : r.pattern.values()) EXPECT_NEAR(v, r.pattern.baseline(), 1e-12);
}

TEST(Fourfold, TruncationWeightReported) {
  const JointSpectralAmplitude j = gaussian(1.0, 4.0, 48);  // strongly correlated: many modes
  const SourcePair p(j, j);
  const FourfoldResult r1 = fourfold_pattern(p, Axis(0.0, 1.0, 2), FourfoldMethod::schmidt(1));
  const SchmidtAnalysis sa = schmidt_analysis(j);
  EXPECT_NEAR(r1.truncation_weight, 1.0 - sa.coefficients[0], 1e-10);
  const FourfoldResult r8 = fourfold_pattern(p, Axis(0.0, 1.0, 2), FourfoldMethod::schmidt(8));
  EXPECT_LT(r8.truncation_weight, r1.truncation_weight);
  EXPECT_THROW(fourfold_pattern(p, Axis(0.0, 1.0, 2), FourfoldMethod::schmidt(0)), std::invalid_argument);
}

TEST(Fourfold, ValuesAreProbabilitiesForRandomSources) {
  std::mt19937_64 rng(83);
  const Axis a = centered_axis(10.0, 32);
  const Axis tau = linspace(-3.0, 3.0, 25);
  for (int t = 0; t < 4; ++t) {
    const SourcePair p(oracle::random_jsa(rng, a, kCenter, kCenter), oracle::random_jsa(rng, a, kCenter, kCenter + 2.0));
    const FourfoldResult r = fourfold_pattern(p, tau, FourfoldMethod::schmidt(32));
    for (double v : r.pattern.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Fourfold, Guards) {
  const JointSpectralAmplitude big = gaussian(1.0, 1.0, 72);
  EXPECT_THROW(fourfold_pattern(SourcePair(big, big), Axis(0.0, 1.0, 2), FourfoldMethod::direct()), GuardViolation);
  EXPECT_NO_THROW(fourfold_pattern(SourcePair(big, big), Axis(0.0, 1.0, 2), FourfoldMethod::schmidt()));
  const JointSpectralAmplitude j = gaussian(1.0, 1.0, 32);
  const SourcePair p(j, j);
  EXPECT_THROW(fourfold_pattern(p, Axis(0.0, 1.1 * p.max_delay(), 2)), std::invalid_argument);
  EXPECT_NO_THROW(fourfold_pattern(p, Axis(-p.max_delay(), p.max_delay(), 3)));
}
