#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "frozen_values.hpp"
#include "rmx/specialfn.hpp"

using namespace rmx;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// ln K_nu(x) at 50 digits, so that values far below the double range compare
double log_k_oracle(double nu, double x) {
  return static_cast<double>(log(boost::math::cyl_bessel_k(Big(nu), Big(x))));
}

double log_i_oracle(double nu, double x) {
  return static_cast<double>(log(boost::math::cyl_bessel_i(Big(nu), Big(x))));
}

// Stirling series for ln Gamma(x) with 10 Bernoulli terms, evaluated at 50 digits
double stirling_log_gamma(double xd) {
  const Big x(xd);
  static const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510,
                             43867.0 / 798, -174611.0 / 330};
  Big s = (x - 0.5) * log(x) - x + 0.5 * log(2 * boost::math::constants::pi<Big>());
  Big xp = x;
  for (int k = 1; k <= 10; ++k) {
    s += Big(b[k - 1]) / (Big(2 * k) * (2 * k - 1) * xp);
    xp *= x * x;
  }
  return static_cast<double>(s);
}

}  // namespace

TEST(LogGamma, Examples) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(6.0), std::log(120.0), 1e-14);
  EXPECT_NEAR(log_gamma(6.0), 4.787492, 1e-6);
  EXPECT_LE(rel(log_gamma(100.5), stirling_log_gamma(100.5)), 1e-12);
  EXPECT_LE(rel(log_gamma(100.5), frozen::log_gamma_100_5), 1e-14);
}

TEST(LogGamma, MatchesReference) {
  for (double x : {1e-8, 0.01, 0.3, 0.5, 1.5, 2.0, 7.25, 33.3, 170.5, 1000.0, 1e6})
    EXPECT_NEAR(log_gamma(x), boost::math::lgamma(x), 1e-13 * std::max(1.0, std::abs(boost::math::lgamma(x)))) << x;
}

TEST(LogGamma, SandwichBound) {
  for (double x : {0.05, 0.5, 1.0, 2.5, 10.0, 77.7, 500.0, 1e4}) {
    // log of Gamma(x+1) e^x / (sqrt(2 pi) x^{x+1/2})
    const double l = log_gamma(x + 1.0) + x - 0.5 * std::log(2 * pi) - (x + 0.5) * std::log(x);
    EXPECT_GT(l, 0.0) << x;
    EXPECT_LT(l, 1.0 / (12.0 * x)) << x;
  }
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(log_gamma(0.0), InvalidArgument);
  EXPECT_THROW(log_gamma(-1.5), InvalidArgument);
}

TEST(LogBesselK, HalfOrderClosedForm) {
  const double expect = std::log(std::sqrt(pi / 2.0) * std::exp(-1.0));
  EXPECT_NEAR(log_bessel_k(0.5, 1.0), expect, 1e-14);
  EXPECT_NEAR(std::exp(log_bessel_k(0.5, 1.0)), 0.461069, 1e-6);
}

TEST(LogBesselK, LargeArgumentAsymptote) {
  const double x = 50.0;
  const double approx = bessel_asymptotic(BesselAsymptotic::K_large_arg, 0.0, x).log_mag;
  EXPECT_LE(std::abs(std::expm1(log_bessel_k(0.0, x) - approx)), 1e-3);
}

TEST(LogBesselK, UniformAsymptote) {
  const double nu = 500, x = 500 * 0.7;
  const double approx = bessel_asymptotic(BesselAsymptotic::K_uniform, nu, x).log_mag;
  EXPECT_LE(std::abs(std::expm1(log_bessel_k(nu, x) - approx)), 1e-3);
}

TEST(LogBesselK, AgainstHighPrecision) {
  for (double nu : {0.0, 0.3, 0.5, 1.0, 2.5, 10.0, 40.0, 49.9, 50.0, 120.0, 500.0, 1000.0})
    for (double x : {1e-3, 0.1, 1.0, 5.0, 9.9, 10.1, 20.0, 80.0, 300.0, 2000.0}) {
      const double got = log_bessel_k(nu, x), want = log_k_oracle(nu, x);
      // relative error of K itself
      EXPECT_LE(std::abs(std::expm1(got - want)), 1e-10) << "nu=" << nu << " x=" << x;
    }
}

TEST(LogBesselK, MonotoneDecreasing) {
  for (double nu : {0.0, 2.5, 60.0})
    for (double x = 0.05; x < 200.0; x *= 1.3) EXPECT_GT(log_bessel_k(nu, x), log_bessel_k(nu, x * 1.3)) << nu << " " << x;
}

TEST(LogBesselK, RejectsBadArguments) {
  EXPECT_THROW(log_bessel_k(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(log_bessel_k(1.0, -2.0), InvalidArgument);
  EXPECT_THROW(log_bessel_k(-1.0, 2.0), InvalidArgument);
}

TEST(BesselRegime, PureFunctionWithDocumentedThresholds) {
  EXPECT_EQ(bessel_regime(3.0, 5.0).kind, BesselMethod::series);
  EXPECT_EQ(bessel_regime(3.0, 10.0).kind, BesselMethod::series);
  EXPECT_EQ(bessel_regime(3.0, 10.5).kind, BesselMethod::continued_fraction);
  EXPECT_EQ(bessel_regime(40.0, 19.0).kind, BesselMethod::series);
  EXPECT_EQ(bessel_regime(40.0, 21.0).kind, BesselMethod::continued_fraction);
  EXPECT_EQ(bessel_regime(50.0, 1.0).kind, BesselMethod::uniform_large_order);
  EXPECT_EQ(bessel_regime(7.0, 3.0).kind, bessel_regime(7.0, 3.0).kind);
  EXPECT_EQ(bessel_regime(7.0, 3.0).k_series_limit, 2.0);
}

TEST(BesselRegime, KOverlapBands) {
  for (double nu : {0.0, 0.5, 3.0, 20.0})
    for (double x : {1.0, 1.5, 2.0, 2.5}) {
      const double s = detail::log_bessel_k_via(BesselMethod::series, nu, x);
      const double c = detail::log_bessel_k_via(BesselMethod::continued_fraction, nu, x);
      EXPECT_LE(std::abs(std::expm1(s - c)), 1e-9) << nu << " " << x;
    }
  for (double nu : {50.0, 65.0, 80.0})
    for (double x : {20.0, 50.0, 100.0}) {
      const double d = detail::log_bessel_k_via(BesselMethod::uniform_large_order, nu, x);
      const double c = detail::log_bessel_k_via(BesselMethod::continued_fraction, nu, x);
      EXPECT_LE(std::abs(std::expm1(d - c)), 1e-9) << nu << " " << x;
    }
}

TEST(BesselRegime, IOverlapBands) {
  for (double nu : {0.0, 0.5, 3.0, 20.0})
    for (double x : {5.0, 10.0, 15.0}) {
      const double s = detail::log_bessel_i_via(BesselMethod::series, nu, x);
      const double c = detail::log_bessel_i_via(BesselMethod::continued_fraction, nu, x);
      EXPECT_LE(std::abs(std::expm1(s - c)), 1e-9) << nu << " " << x;
    }
  for (double nu : {50.0, 65.0, 80.0})
    for (double x : {5.0, 25.0, 40.0}) {
      const double d = detail::log_bessel_i_via(BesselMethod::uniform_large_order, nu, x);
      const double s = detail::log_bessel_i_via(BesselMethod::series, nu, x);
      EXPECT_LE(std::abs(std::expm1(d - s)), 1e-9) << nu << " " << x;
    }
}

TEST(ScaledBesselI, Examples) {
  EXPECT_EQ(scaled_bessel_i(0.0, 0.0).to_complex(), cplx(1.0, 0.0));
  EXPECT_TRUE(scaled_bessel_i(2.0, 0.0).is_zero());
  const cplx v = scaled_bessel_i(0.5, 1.0).to_complex();
  EXPECT_NEAR(v.real(), std::sqrt(2.0 / pi) * std::sinh(1.0), 1e-15);
  EXPECT_NEAR(v.real(), 0.937674, 1e-6);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(ScaledBesselI, RealAxisAgainstHighPrecision) {
  for (double nu : {0.0, 0.5, 1.0, 3.0, 12.5, 49.0, 50.0, 200.0, 1000.0})
    for (double x : {1e-3, 0.5, 4.0, 9.9, 10.5, 30.0, 250.0, 1500.0}) {
      const double got = scaled_bessel_i(nu, x).log_mag, want = log_i_oracle(nu, x);
      EXPECT_LE(std::abs(std::expm1(got - want)), 1e-10) << "nu=" << nu << " x=" << x;
    }
}

TEST(ScaledBesselI, LargeOrderComplexArgument) {
  const cplx z = 2.0 * std::sqrt(300.0 * cplx(0.5, 0.1));
  const cplx got = scaled_bessel_i(300.0, z).to_complex();
  EXPECT_LE(rel(got, cplx(frozen::bessel_i300_re, frozen::bessel_i300_im)), 1e-10);
}

TEST(ScaledBesselI, ConjugateSymmetry) {
  for (cplx z : {cplx(1.0, 2.0), cplx(-0.5, 0.7), cplx(6.0, -3.0)}) {
    const cplx a = scaled_bessel_i(2.5, z).to_complex(), b = scaled_bessel_i(2.5, std::conj(z)).to_complex();
    EXPECT_LE(std::abs(a - std::conj(b)), 1e-14 * std::abs(a));
  }
}

TEST(Wronskian, IKIdentity) {
  for (double nu : {0.0, 0.5, 3.0, 40.0})
    for (double x : {0.1, 1.0, 10.0, 100.0}) {
      const double l1 = scaled_bessel_i(nu, x).log_mag + log_bessel_k(nu + 1, x);
      const double l2 = scaled_bessel_i(nu + 1, x).log_mag + log_bessel_k(nu, x);
      const double w = std::exp(l1 + std::log(x)) + std::exp(l2 + std::log(x));
      EXPECT_NEAR(w, 1.0, 1e-9) << nu << " " << x;
    }
}

TEST(Wronskian, ComplexIAgainstNearbyRealK) {
  // I_nu(z) K_{nu+1}(z) + I_{nu+1}(z) K_nu(z) = 1/z, checked where z is real
  // close to the complex example point and along the real segment between.
  const double nu = 300.0;
  const double x0 = std::abs(2.0 * std::sqrt(300.0 * cplx(0.5, 0.1)));
  for (double x : {0.95 * x0, x0, 1.05 * x0}) {
    const double l1 = scaled_bessel_i(nu, x).log_mag + log_bessel_k(nu + 1, x);
    const double l2 = scaled_bessel_i(nu + 1, x).log_mag + log_bessel_k(nu, x);
    EXPECT_NEAR(std::exp(l1 + std::log(x)) + std::exp(l2 + std::log(x)), 1.0, 1e-9) << x;
  }
}

TEST(ProductAsymptotic, TwoNuIK) {
  const double nu = 1e4;
  for (double x = 0.2; x <= 3.0 + 1e-12; x += 0.2) {
    const double arg = std::sqrt(nu) * x;
    const double v = std::log(2 * nu) + scaled_bessel_i(nu, arg).log_mag + log_bessel_k(nu, arg);
    EXPECT_NEAR(std::exp(v), 1.0, 1e-2) << x;
  }
}

TEST(ProductAsymptotic, CombinedKernelOnGrid) {
  // 2 nu sqrt(K_nu(2 sqrt(nu)|z|) K_nu(2 sqrt(nu)|w|)) I_nu(2 sqrt(nu z conj w))
  // over (z conj w/|zw|)^{nu/2} G(z,w)
  const double nu = 1e3;
  const cplx pts[] = {{0.3, 0.0}, {0.8, 0.4}, {-0.6, 0.9}, {0.0, 1.2}, {1.1, -1.0}};
  for (cplx z : pts)
    for (cplx w : pts) {
      const cplx zw = z * std::conj(w);
      const ScaledComplex lhs = scaled_bessel_i(nu, 2.0 * std::sqrt(nu * zw)) *
                                ScaledComplex::from_log(std::log(2 * nu) + 0.5 * log_bessel_k(nu, 2 * std::sqrt(nu) * std::abs(z)) +
                                                        0.5 * log_bessel_k(nu, 2 * std::sqrt(nu) * std::abs(w)));
      const cplx g = std::exp(zw - 0.5 * std::norm(z) - 0.5 * std::norm(w));
      const ScaledComplex rhs = scaled_value(0.0, 0.5 * nu * std::arg(zw)) * ScaledComplex::from(g);
      const cplx ratio = (lhs / rhs).to_complex();
      EXPECT_LE(std::abs(ratio - 1.0), 1e-2) << z << " " << w;
    }
}

TEST(Erfc, Examples) {
  EXPECT_EQ(erfc_complex(0.0), cplx(1.0, 0.0));
  EXPECT_NEAR((erfc_complex(-1.37) + erfc_complex(1.37)).real(), 2.0, 1e-15);
  const cplx v = erfc_complex(std::sqrt(2.0));
  EXPECT_NEAR(v.real(), frozen::erfc_sqrt2_re, 1e-15);
  EXPECT_NEAR(v.real(), 0.0455003, 1e-7);
  EXPECT_NEAR(v.imag(), 0.0, 1e-16);
  const cplx m = erfc_complex({-2.5, 1.75});
  EXPECT_LE(std::abs(m - cplx(frozen::erfc_mixed_re, frozen::erfc_mixed_im)), 1e-12);
}

TEST(Erfc, RealAxis) {
  for (double x = -6.0; x <= 27.0; x += 0.173) {
    const cplx v = erfc_complex(x);
    EXPECT_NEAR(v.real(), boost::math::erfc(x), 1e-13 * std::max(1.0, boost::math::erfc(x))) << x;
    EXPECT_EQ(v.imag(), 0.0) << x;
  }
}

TEST(Erfc, ConjugateSymmetry) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> d(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(d(gen), d(gen));
    const cplx a = erfc_complex(z), b = erfc_complex(std::conj(z));
    EXPECT_LE(std::abs(a - std::conj(b)), 1e-15 * std::max(1.0, std::abs(a)));
  }
}

TEST(Erfc, FaddeevaRelation) {
  for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 2.0), cplx(2.0, -0.5), cplx(5.0, 5.0)}) {
    const cplx w = faddeeva_w(z);
    const cplx e = std::exp(-z * z) * erfc_complex(cplx(0, -1) * z);
    EXPECT_LE(std::abs(w - e), 1e-13 * std::max(1.0, std::abs(w))) << z;
  }
}

TEST(BesselAsymptotic, LemmaIRatio) {
  const double nu = 400;
  const double x = 1.3;
  const double got = scaled_bessel_i(nu, std::sqrt(nu) * x).log_mag;
  const double approx = bessel_asymptotic(BesselAsymptotic::I_lemma43, nu, x).log_mag;
  const double ratio = std::exp(got - approx);
  EXPECT_GE(ratio, 0.999);
  EXPECT_LE(ratio, 1.001);
}

TEST(BesselAsymptotic, LemmaKRatio) {
  const double nu = 400, x = 0.8;
  const double ratio = std::exp(log_bessel_k(nu, std::sqrt(nu) * x) -
                                bessel_asymptotic(BesselAsymptotic::K_lemma43, nu, x).log_mag);
  EXPECT_GE(ratio, 0.999);
  EXPECT_LE(ratio, 1.001);
}

TEST(BesselAsymptotic, UniformKRatio) {
  const double nu = 500, x = 0.7 * 500;
  const double ratio = std::exp(log_bessel_k(nu, x) - bessel_asymptotic(BesselAsymptotic::K_uniform, nu, x).log_mag);
  EXPECT_GE(ratio, 0.999);
  EXPECT_LE(ratio, 1.001);
}

TEST(BesselAsymptotic, RejectsOutOfRange) {
  EXPECT_THROW(bessel_asymptotic(BesselAsymptotic::K_lemma43, 100.0, -0.5), InvalidArgument);
  EXPECT_THROW(bessel_asymptotic(BesselAsymptotic::K_lemma43, 100.0, cplx(0.5, 0.2)), InvalidArgument);
  EXPECT_THROW(bessel_asymptotic(BesselAsymptotic::K_large_arg, 1.0, 0.0), InvalidArgument);
}
