#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "frozen_values.hpp"
#include "rmx/verify.hpp"

using namespace rmx;

TEST(Histogram, Examples) {
  const Grid2D g{0, 1, 0, 1, 4, 4};
  const Histogram2D center = histogram2d({cplx(0.5, 0.5)}, g);
  EXPECT_EQ(center.counts(2, 2), 1);
  EXPECT_EQ(center.counts.sum(), 1);
  // lower-left corner belongs to the cell; the far edge is outside
  const Histogram2D corner = histogram2d({cplx(0.25, 0.5), cplx(1.0, 0.5), cplx(-1, 2)}, g);
  EXPECT_EQ(corner.counts(1, 2), 1);
  EXPECT_EQ(corner.counts.sum(), 1);
  EXPECT_EQ(corner.total, 3);
  EXPECT_THROW(histogram2d({}, Grid2D{0, 0, 0, 1, 1, 1}), InvalidArgument);
}

TEST(Histogram, UniformWithinBinomialBand) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<cplx> pts(1000000);
  for (auto& p : pts) p = cplx(u(rng), u(rng));
  const Histogram2D h = histogram2d(pts, Grid2D{0, 1, 0, 1, 10, 10});
  const double sigma = std::sqrt(1e6 * 0.01 * 0.99);
  EXPECT_LE((h.counts - 1e4).abs().maxCoeff(), 5 * sigma);
  EXPECT_EQ(h.counts.sum(), h.total);
}

TEST(Histogram, DensityIntegratesToInsideShare) {
  const Grid2D g{-1, 1, -1, 1, 8, 8};
  std::vector<cplx> pts{{0.1, 0.1}, {0.9, -0.9}, {3, 3}, {-0.5, 0.2}};
  const Histogram2D h = histogram2d(pts, g);
  EXPECT_NEAR(h.density_per_dA().sum() * g.cell_area_dA(), 3.0 / 4.0, 1e-15);
}

TEST(DensityDistance, SelfAndNull) {
  const double alpha = 1.0;
  auto law = [&](cplx z) { return wishart_density(z, alpha, 0.0); };
  const double R = std::sqrt(1 + alpha);
  const Grid2D g{-R, R, -R, R, 10, 10};

  const Histogram2D exact = expected_histogram(law, g, 1e5);
  EXPECT_LE(density_distance(exact, law).l1_distance, 1e-12);

  // inverse-CDF radial sampling: F(r) = (sqrt(4r^2 + a^2) - a)/2, so r = sqrt(u^2 + a u)
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u01(0, 1);
  std::vector<cplx> pts(100000);
  for (auto& p : pts) {
    const double u = u01(rng);
    p = std::polar(std::sqrt(u * u + alpha * u), 2 * pi * u01(rng));
  }
  const DropletGeometry d = droplet_geometry(alpha, 0.0);
  DistanceOptions opts;
  opts.points = &pts;
  opts.droplet = d;
  const ComparisonReport r = density_distance(histogram2d(pts, g), law, opts);
  EXPECT_LE(r.l1_distance, 0.03);
  EXPECT_EQ(r.inside_fraction, 1.0);
  EXPECT_EQ(r.n_samples, 100000);
  EXPECT_GE(r.sup_distance, 0.0);
  const ComparisonReport again = density_distance(histogram2d(pts, g), law, opts);
  EXPECT_EQ(again.l1_distance, r.l1_distance);
  const std::string js = report_json(r);
  EXPECT_NE(js.find("\"l1_distance\""), std::string::npos);
}

TEST(Berezin, MassOne) {
  EXPECT_NEAR(berezin_mass(1.0, 1.0, Regime::bulk), 1.0, 1e-6);
  EXPECT_NEAR(berezin_mass(cplx(0.3, -0.8), 1.0, Regime::bulk), 1.0, 1e-6);
  EXPECT_NEAR(berezin_mass(1.0, 1.0, Regime::critical), 1.0, 1e-4);
  EXPECT_NEAR(berezin_mass(cplx(0, 0.5), 1.0, Regime::critical), 1.0, 1e-4);
  EXPECT_NEAR(berezin_mass(cplx(-0.7, 0.4), 1.0, Regime::critical), 1.0, 1e-4);
  EXPECT_THROW(berezin_mass(0.0, 1.0, Regime::bulk), InvalidArgument);
  EXPECT_THROW(berezin_mass(1.0, 0.0, Regime::bulk), InvalidArgument);
}

TEST(Orthogonality, Matrix) {
  const EnsembleParams p = make_params(8, 2, 0.5);
  const Eigen::MatrixXcd G = orthogonality_matrix(p, 5);
  for (int j = 0; j <= 5; ++j)
    for (int k = 0; k <= 5; ++k) {
      const double hj = std::exp(log_norm_h(j, p)), hk = std::exp(log_norm_h(k, p));
      if (j == k)
        EXPECT_NEAR(G(j, k).real() / (hj / 2), 1.0, 1e-6);
      else
        EXPECT_LE(std::abs(G(j, k)), 1e-6 * std::sqrt(hj * hk));
    }
}

TEST(Convergence, CriticalCuts) {
  std::vector<cplx> xs, ys;
  for (double t : {0.0, 0.4, 0.8, 1.2, 1.6}) {
    xs.emplace_back(t, 0);
    ys.emplace_back(0, t);
  }
  const auto rows = convergence_table({10, 100, 1000}, 1.0, TauRule::critical, 0.0, xs, 2);
  ASSERT_EQ(rows.size(), 15u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    if (r.z == cplx(0, 0)) {
      EXPECT_EQ(r.finite_N, 0.0);
      EXPECT_EQ(r.limit, 0.0);
    }
  }
  // error at N=1000 below that at N=10 at every nonzero point
  for (std::size_t b = 1; b < xs.size(); ++b) EXPECT_LT(rows[2 * xs.size() + b].abs_err, rows[b].abs_err) << xs[b];

  const auto yrows = convergence_table({1000}, 1.0, TauRule::critical, 0.0, ys, 1);
  // y^2 erfc(sqrt2 y^2): rises then decays
  EXPECT_GT(yrows[1].limit, yrows[0].limit);
  EXPECT_GT(yrows[2].limit, yrows[4].limit);
  EXPECT_GT(yrows[3].limit, yrows[4].limit);
  for (const auto& r : yrows) {
    const double y = r.z.imag();
    EXPECT_NEAR(r.limit, y * y * std::erfc(std::sqrt(2.0) * y * y), 1e-14);
  }
  std::ostringstream out;
  write_convergence_csv(out, rows);
  const std::string csv = out.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
}

TEST(Convergence, FailedRowsContinue) {
  // nu = alpha N must be positive; alpha > 0 keeps every row valid, so force a bad point instead
  const auto rows = convergence_table({10}, 1.0, TauRule::fixed, 1.5, {cplx(0.5, 0)}, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(std::isnan(rows[0].abs_err));
}

TEST(Ks, Basics) {
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_NEAR(ks_distance({0.5}, uniform), 0.5, 1e-15);
  EXPECT_NEAR(ks_distance({0.25, 0.75}, uniform), 0.25, 1e-15);
  EXPECT_NEAR(ks_distance({0.75, 0.25}, uniform), 0.25, 1e-15);
  EXPECT_THROW(ks_distance({}, uniform), InvalidArgument);
}

TEST(Cdfs, AgainstFrozen) {
  EXPECT_NEAR(mp_cdf(2.0, 1.0), frozen::mp_cdf_alpha1_at_2, 1e-10);
  EXPECT_NEAR(mp_cdf(4.0, 3.0), frozen::mp_cdf_alpha3_at_4, 1e-10);
  EXPECT_EQ(mp_cdf(0.1, 1.0), 0.0);
  EXPECT_EQ(mp_cdf(6.0, 1.0), 1.0);
  EXPECT_NEAR(product_radial_cdf(0.5, 2), 0.5, 1e-15);
  EXPECT_NEAR(product_radial_cdf(0.5, 1), 0.25, 1e-15);
}

TEST(Cdfs, DropletRadial) {
  EXPECT_EQ(droplet_radial_cdf(0.0, 1.0, 0.5), 0.0);
  EXPECT_EQ(droplet_radial_cdf(1.0, 1.0, 0.5), 1.0);
  // tau = 0: F(r) = (sqrt(4 r^2 + a^2) - a)/2 with r = rho * sqrt(1 + a)
  for (double rho : {0.2, 0.5, 0.9}) {
    const double r = rho * std::sqrt(2.0);
    EXPECT_NEAR(droplet_radial_cdf(rho, 1.0, 0.0), (std::sqrt(4 * r * r + 1) - 1) / 2, 1e-9);
  }
  double prev = 0;
  for (double rho = 0.1; rho < 1.0; rho += 0.1) {
    const double v = droplet_radial_cdf(rho, 1.0, 0.5);
    EXPECT_GT(v, prev);
    prev = v;
  }
}
