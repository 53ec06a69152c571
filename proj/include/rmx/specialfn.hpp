#pragma once

#include "rmx/core.hpp"

namespace rmx {

enum class BesselMethod { series, continued_fraction, uniform_large_order };

struct BesselRegime {
  BesselMethod kind = BesselMethod::series;
  double order = 0.0;
  double series_limit = 10.0;  // |arg| bound for the I series
  double k_series_limit = 2.0;  // K uses Temme's series up to here, Steed's fraction beyond
  double uniform_order = 50.0;  // order from which the uniform expansion is used
};

// Pure function of (order, |arg|).
BesselRegime bessel_regime(double order, double abs_arg);

double log_gamma(double x);

// ln K_nu(x) for x > 0, nu >= 0.
double log_bessel_k(double order, double x);

// I_nu(z), principal branch of (z/2)^nu. For real positive z the result is
// accurate to ~1e-14 relative; off the positive axis the power series is used,
// which loses relative accuracy once Re z << -|Im z| and |z| is large.
ScaledComplex scaled_bessel_i(double order, cplx z);

// Complementary error function; absolute error ~1e-15 for |z| <= 30.
cplx erfc_complex(cplx z);
// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
cplx faddeeva_w(cplx z);

enum class BesselAsymptotic { K_large_arg, K_uniform, I_lemma43, K_lemma43 };

// Leading-order approximants:
//  K_large_arg (nu, x):      sqrt(pi/(2x)) e^{-x}
//  K_uniform   (nu, x=nu*r): (pi/(2nu))^{1/2} (1+r^2)^{-1/4} ((1+sqrt(1+r^2))/r)^nu e^{-nu sqrt(1+r^2)}
//  I_lemma43   (nu, z):      approximates I_nu(sqrt(nu) z)
//  K_lemma43   (nu, x>0):    approximates K_nu(sqrt(nu) x)
ScaledComplex bessel_asymptotic(BesselAsymptotic kind, double order, cplx arg);

namespace detail {
// Force a particular evaluation path (for overlap tests).
double log_bessel_k_via(BesselMethod method, double order, double x);
double log_bessel_i_via(BesselMethod method, double order, double x);
}  // namespace detail

}  // namespace rmx
