#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rmx/ensembles.hpp"
#include "rmx/globallaw.hpp"

using namespace rmx;

namespace {

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(GinibrePair, EntryVariance) {
  // E|P_jk|^2 = 1/(2N): variance 1/(4N) per real component
  const int N = 1000;
  const double tau = 0.3;
  const MatrixPair m = sample_ginibre_pair(make_params(N, 0, tau), {17, 0});
  const Eigen::MatrixXcd P = (m.X1 + m.X2) / (2.0 * std::sqrt(1 + tau));
  const Eigen::MatrixXcd Q = (m.X1 - m.X2) / (2.0 * std::sqrt(1 - tau));
  const double n = static_cast<double>(P.size());
  const double mp = P.cwiseAbs2().sum() / n, mq = Q.cwiseAbs2().sum() / n;
  const double target = 1.0 / (2 * N), band = 5.0 / std::sqrt(n);
  EXPECT_NEAR(mp / target, 1.0, band);
  EXPECT_NEAR(mq / target, 1.0, band);
  EXPECT_NEAR(ginibre_component_sigma(N), 1.0 / std::sqrt(4.0 * N), 1e-16);
  // real and imaginary parts separately
  EXPECT_NEAR(P.real().array().square().sum() / n / (target / 2), 1.0, 2 * band);
}

TEST(GinibrePair, HermitianLimitIdentical) {
  const MatrixPair m = sample_ginibre_pair(make_params(40, 5, 1.0), {3, 2});
  EXPECT_EQ((m.X1 - m.X2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(GinibrePair, IndependentAtTauZero) {
  const MatrixPair m = sample_ginibre_pair(make_params(300, 10, 0.0), {4, 0});
  const Eigen::ArrayXXd a = m.X1.real().array(), b = m.X2.real().array();
  const double n = static_cast<double>(a.size());
  const double ma = a.mean(), mb = b.mean();
  const double corr = ((a - ma) * (b - mb)).sum() /
                      std::sqrt((a - ma).square().sum() * (b - mb).square().sum());
  EXPECT_LE(std::abs(corr), 3.0 / std::sqrt(n));
}

TEST(GinibrePair, CorrelationMatchesTau) {
  // E[X1 conj(X2)] = (1+tau - (1-tau)) E|P|^2 = tau / N
  const int N = 300;
  const double tau = 0.6;
  const MatrixPair m = sample_ginibre_pair(make_params(N, 0, tau), {8, 1});
  const double n = static_cast<double>(m.X1.size());
  const double c = (m.X1.array() * m.X2.conjugate().array()).real().sum() / n;
  EXPECT_NEAR(c * N, tau, 5.0 / std::sqrt(n) * 2);
}

TEST(GinibrePair, Shape) {
  const MatrixPair m = sample_ginibre_pair(make_params(7, 3, 0.5), {1, 1});
  EXPECT_EQ(m.X1.rows(), 7);
  EXPECT_EQ(m.X1.cols(), 10);
  EXPECT_EQ(m.X2.rows(), 7);
  EXPECT_EQ(m.X2.cols(), 10);
}

TEST(GinibrePair, RejectsNonIntegerNu) {
  EXPECT_THROW(sample_ginibre_pair(make_params(5, 1.5, 0.5), {1, 0}), InvalidArgument);
  EXPECT_THROW(sample_ginibre_pair(make_params(5, -0.5, 0.5), {1, 0}), InvalidArgument);
  EXPECT_THROW(wishart_eigs(make_params(5, 0.25, 0.5), {1, 0}), InvalidArgument);
}

TEST(GinibrePair, Deterministic) {
  const EnsembleParams p = make_params(30, 4, 0.4);
  const MatrixPair a = sample_ginibre_pair(p, {99, 7}), b = sample_ginibre_pair(p, {99, 7});
  EXPECT_TRUE(a.X1 == b.X1);
  EXPECT_TRUE(a.X2 == b.X2);
  const MatrixPair c = sample_ginibre_pair(p, {99, 8});
  EXPECT_FALSE(a.X1 == c.X1);
}

TEST(WishartEigs, HermitianLimitIsPositive) {
  const SpectrumSample s = wishart_eigs(make_params(200, 200, 1.0), {5, 0});
  ASSERT_EQ(s.eigenvalues.size(), 200);
  EXPECT_EQ(s.zero_mode_count, 0);
  const double scale = max_abs(s.eigenvalues);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    EXPECT_LE(std::abs(s.eigenvalues(i).imag()), 1e-8 * scale);
    EXPECT_GT(s.eigenvalues(i).real(), 0.0);
  }
}

TEST(WishartEigs, ProductLawOnUnitDisc) {
  const SpectrumSample s = wishart_eigs(make_params(1000, 0, 0.0), {6, 0});
  int inside = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) inside += std::abs(s.eigenvalues(i)) <= 1.05;
  EXPECT_GE(inside, 980);
}

TEST(WishartEigs, InsideEllipse) {
  const SpectrumSample s = wishart_eigs(make_params(1000, 1000, 0.5), {7, 0});
  const DropletGeometry g = droplet_geometry(1.0, 0.5);
  int inside = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) inside += g.ellipse_form(s.eigenvalues(i)) <= 1.05 * 1.05;
  EXPECT_GE(inside, 980);
}

TEST(WishartEigs, BackwardStable) {
  const EnsembleParams p = make_params(60, 6, 0.5);
  const MatrixPair m = sample_ginibre_pair(p, {12, 0});
  const Eigen::MatrixXcd X = m.X1 * m.X2.adjoint();
  const SpectrumSample s = wishart_eigs(p, {12, 0});
  const double norm = X.norm();
  // smallest singular value of X - lambda I is a backward error for lambda
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const Eigen::MatrixXcd shifted = X - s.eigenvalues(i) * Eigen::MatrixXcd::Identity(60, 60);
    const double smin = Eigen::JacobiSVD<Eigen::MatrixXcd>(shifted).singularValues().minCoeff();
    EXPECT_LE(smin, 1e-12 * norm);
  }
}

TEST(WishartEigs, ScalingByTwo) {
  const EnsembleParams p = make_params(80, 8, 0.3);
  const MatrixPair m = sample_ginibre_pair(p, {21, 0});
  const Eigen::VectorXcd e1 = eigenvalues_of(m.X1 * m.X2.adjoint(), {21, 0});
  const Eigen::VectorXcd e2 = eigenvalues_of((2.0 * m.X1) * (2.0 * m.X2).adjoint(), {21, 0});
  EXPECT_LE(multiset_distance(4.0 * e1, e2), 1e-10 * max_abs(e2));
}

TEST(WishartEigs, FailureCarriesSeed) {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4);
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  try {
    eigenvalues_of(bad, {1234, 5});
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    ASSERT_TRUE(e.seed().has_value());
    EXPECT_EQ(*e.seed(), 1234u);
    EXPECT_EQ(*e.stream(), 5u);
  }
}

TEST(DiracEigs, SquaresAreWishartEigenvalues) {
  const EnsembleParams p = make_params(100, 20, 0.6);
  const SpectrumSample w = wishart_eigs(p, {31, 0});
  const SpectrumSample d = dirac_eigs(p, {31, 0});
  ASSERT_EQ(d.eigenvalues.size(), 200);
  EXPECT_EQ(d.zero_mode_count, 20);
  EXPECT_EQ(d.kind, SpectrumKind::dirac);
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const cplx sq = d.eigenvalues(i) * d.eigenvalues(i);
    double best = inf;
    for (Eigen::Index j = 0; j < w.eigenvalues.size(); ++j) best = std::min(best, std::abs(sq - w.eigenvalues(j)));
    EXPECT_LE(best, 1e-10 * std::abs(sq));
  }
}

TEST(DiracEigs, ClosedUnderNegationExactly) {
  const SpectrumSample d = dirac_eigs(make_params(50, 5, 0.4), {2, 0});
  const Eigen::VectorXcd neg = -d.eigenvalues;
  EXPECT_EQ(multiset_distance(d.eigenvalues, neg), 0.0);
  EXPECT_LE(std::abs(d.eigenvalues.sum()), 1e-8 * 50 * max_abs(d.eigenvalues));
}

TEST(DiracEigs, TwoComponentsAboveCriticalTau) {
  const double tau = 0.85;
  const SpectrumSample d = dirac_eigs(make_params(1000, 1000, tau), {7, 0});
  const DropletGeometry g = droplet_geometry(1.0, tau);
  int inside = 0;
  // zeta in the Dirac droplet iff zeta^2 in the Wishart ellipse
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const cplx z = d.eigenvalues(i);
    inside += g.ellipse_form(z * z) <= 1.05 * 1.05;
  }
  EXPECT_GE(inside, static_cast<int>(0.98 * d.eigenvalues.size()));
  // no point near the origin: the droplet has split
  const auto e = edge_points(1.0, tau);
  ASSERT_TRUE(e.inner.has_value());
  int near0 = 0;
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) near0 += std::abs(d.eigenvalues(i)) < 0.5 * *e.inner;
  EXPECT_EQ(near0, 0);
}

TEST(DiracDirect, ZeroModesAndPairs) {
  const EnsembleParams p = make_params(50, 3, 0.4);
  const SpectrumSample full = dirac_eigs_direct(p, {41, 0});
  ASSERT_EQ(full.eigenvalues.size(), 103);
  std::vector<cplx> nonzero;
  int zeros = 0;
  for (Eigen::Index i = 0; i < full.eigenvalues.size(); ++i) {
    if (std::abs(full.eigenvalues(i)) <= 1e-8)
      ++zeros;
    else
      nonzero.push_back(full.eigenvalues(i));
  }
  EXPECT_EQ(zeros, 3);
  ASSERT_EQ(nonzero.size(), 100u);
  const SpectrumSample via = dirac_eigs(p, {41, 0});
  const Eigen::VectorXcd nz = Eigen::Map<const Eigen::VectorXcd>(nonzero.data(), 100);
  EXPECT_LE(multiset_distance(nz, via.eigenvalues), 1e-8);
}

TEST(DiracDirect, ChiralSymmetryAtTauZero) {
  const SpectrumSample full = dirac_eigs_direct(make_params(50, 0, 0.0), {42, 0});
  EXPECT_LE(multiset_distance(full.eigenvalues, -full.eigenvalues), 1e-10);
}

TEST(DiracDirect, HermitianChiralLimit) {
  const EnsembleParams p = make_params(100, 10, 1.0);
  const SpectrumSample full = dirac_eigs_direct(p, {43, 0});
  const double scale = max_abs(full.eigenvalues);
  std::vector<double> pos;
  for (Eigen::Index i = 0; i < full.eigenvalues.size(); ++i) {
    EXPECT_LE(std::abs(full.eigenvalues(i).imag()), 1e-8 * scale);
    if (full.eigenvalues(i).real() > 1e-6) pos.push_back(full.eigenvalues(i).real());
  }
  ASSERT_EQ(pos.size(), 100u);
  std::sort(pos.begin(), pos.end());
  const MatrixPair m = sample_ginibre_pair(p, {43, 0});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.X1 * m.X1.adjoint());
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(pos[i], std::sqrt(es.eigenvalues()(i)), 1e-8);
}

TEST(DiracDirect, SizeCap) { EXPECT_THROW(dirac_eigs_direct(make_params(401, 0, 0.5), {1, 0}), InvalidArgument); }

TEST(Trials, ThreadCountDoesNotChangeResults) {
  const EnsembleParams p = make_params(40, 4, 0.5);
  const auto a = sample_trials(p, SampleMethod::dirac, 77, 6, 1);
  const auto b = sample_trials(p, SampleMethod::dirac, 77, 6, 4);
  ASSERT_EQ(a.size(), 6u);
  for (int t = 0; t < 6; ++t) {
    EXPECT_EQ(a[t].seed.stream_id, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(a[t].eigenvalues == b[t].eigenvalues) << t;
  }
  EXPECT_FALSE(a[0].eigenvalues == a[1].eigenvalues);
}

TEST(Trials, RejectsZeroTrials) {
  EXPECT_THROW(sample_trials(make_params(4, 0, 0.5), SampleMethod::wishart, 1, 0, 1), InvalidArgument);
}

TEST(MultisetDistance, Basic) {
  Eigen::VectorXcd a(3), b(3);
  a << cplx(0, 0), cplx(1, 0), cplx(0, 2);
  b << cplx(0, 2.5), cplx(0, 0), cplx(1, 0);
  EXPECT_DOUBLE_EQ(multiset_distance(a, b), 0.5);
  EXPECT_THROW(multiset_distance(a, Eigen::VectorXcd(2)), InvalidArgument);
}

TEST(SpectrumCsv, HeaderRowsAndZeroModes) {
  const auto s = sample_trials(make_params(3, 2, 0.5), SampleMethod::dirac, 5, 2, 1);
  std::ostringstream plain, with_zero;
  write_spectrum_csv(plain, s, false);
  write_spectrum_csv(with_zero, s, true);
  const std::string a = plain.str(), b = with_zero.str();
  EXPECT_EQ(a.rfind("re,im,kind,trial\n", 0), 0u);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 2 * 6);
  EXPECT_EQ(std::count(b.begin(), b.end(), '\n'), 1 + 2 * 8);
  EXPECT_NE(b.find("0,0,dirac,1\n"), std::string::npos);
  EXPECT_NE(a.find(",dirac,0\n"), std::string::npos);
}
