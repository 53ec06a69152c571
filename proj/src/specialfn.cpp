#include "rmx/specialfn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace rmx {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double uniform_order = 50.0;
constexpr int debye_terms = 13;

// Taylor coefficients of 1/Gamma(1+x) = sum_m d[m] x^m.
constexpr std::array<double, 29> rgamma1p = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

// Debye polynomials u_k(p), coefficient vectors indexed by power of p.
const std::vector<std::vector<double>>& debye_polys() {
  static const std::vector<std::vector<double>> polys = [] {
    std::vector<std::vector<double>> u(debye_terms);
    u[0] = {1.0};
    for (int k = 0; k + 1 < debye_terms; ++k) {
      const auto& uk = u[k];
      std::vector<double> next(uk.size() + 3, 0.0);
      // 1/2 p^2 (1 - p^2) u_k'(p)
      for (std::size_t n = 1; n < uk.size(); ++n) {
        const double d = n * uk[n];
        next[n + 1] += 0.5 * d;
        next[n + 3] -= 0.5 * d;
      }
      // 1/8 int_0^p (1 - 5 t^2) u_k(t) dt
      for (std::size_t n = 0; n < uk.size(); ++n) {
        next[n + 1] += uk[n] / (8.0 * (n + 1));
        next[n + 3] -= 5.0 * uk[n] / (8.0 * (n + 3));
      }
      u[k + 1] = next;
    }
    return u;
  }();
  return polys;
}

double poly_eval(const std::vector<double>& c, double p) {
  double s = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) s = s * p + c[n];
  return s;
}

// sum_k sign^k u_k(p) / nu^k
double debye_sum(double nu, double p, int sign) {
  const auto& u = debye_polys();
  double s = 0.0, f = 1.0;
  for (int k = 0; k < debye_terms; ++k) {
    const double term = f * poly_eval(u[k], p);
    s += term;
    if (k > 2 && std::abs(term) < 1e-17 * std::abs(s)) break;
    f *= sign / nu;
  }
  return s;
}

struct DebyeParts {
  double eta, p, quarter_log;  // nu*eta is the exponent, (1+z^2)^{-1/4} in log form
};

DebyeParts debye_parts(double nu, double x) {
  const double z = x / nu;
  const double root = std::hypot(1.0, z);
  return {root + std::log(z) - std::log1p(root), 1.0 / root, -0.5 * std::log(root)};
}

double log_k_debye(double nu, double x) {
  const auto d = debye_parts(nu, x);
  return 0.5 * std::log(pi / (2.0 * nu)) - nu * d.eta + d.quarter_log + std::log(debye_sum(nu, d.p, -1));
}

double log_i_debye(double nu, double x) {
  const auto d = debye_parts(nu, x);
  return nu * d.eta - 0.5 * std::log(2.0 * pi * nu) + d.quarter_log + std::log(debye_sum(nu, d.p, +1));
}

// log K_mu(x) and K_{mu+1}(x)/K_mu(x) for |mu| <= 1/2.
struct KPair {
  double log_k, ratio;
};

KPair k_temme(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = pi * mu;
  const double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;

  double gam1 = 0.0, gam2 = 0.0, gampl = 0.0, gammi = 0.0;
  double mpow = 1.0, prev = 0.0;
  for (std::size_t m = 0; m < rgamma1p.size(); ++m) {
    const double t = rgamma1p[m] * mpow;
    gampl += t;
    if (m % 2) {
      gammi -= t;
      gam1 -= rgamma1p[m] * prev;
    } else {
      gammi += t;
      gam2 += t;
    }
    prev = mpow;
    mpow *= mu;
  }

  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  for (int i = 1; i < 10000; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * eps) break;
  }
  return {std::log(sum), sum1 * (2.0 / x) / sum};
}

KPair k_steed(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i < 100000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  if (i >= 100000) throw NumericalFailure("bessel K: continued fraction did not converge");
  h = a1 * h;
  return {0.5 * std::log(pi / (2.0 * x)) - x - std::log(s), (mu + x + 0.5 - h) / x};
}

// Upward recurrence from mu = nu - round(nu) in ratio form.
KPair k_recur(double nu, double x, bool use_temme) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair kp = use_temme ? k_temme(mu, x) : k_steed(mu, x);
  double lk = kp.log_k, r = kp.ratio;
  for (int n = 0; n < nl; ++n) {
    lk += std::log(r);
    r = 1.0 / r + 2.0 * (mu + n + 1) / x;
  }
  return {lk, r};
}

constexpr double k_series_limit = 2.0;

KPair k_small_order(double nu, double x) { return k_recur(nu, x, x <= k_series_limit); }

double log_i_cf1(double nu, double x) {
  const double tiny = 1e-300;
  const double xi = 1.0 / x, xi2 = 2.0 * xi;
  double h = nu * xi;
  if (h < tiny) h = tiny;
  double b = xi2 * nu, d = 0.0, c = h;
  int i = 1;
  for (; i < 1000000; ++i) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  if (i >= 1000000) throw NumericalFailure("bessel I: continued fraction did not converge");
  const KPair kp = k_small_order(nu, x);
  // Wronskian: I_nu (K_{nu+1} + (f - nu/x) K_nu) = 1/x
  return -std::log(x) - kp.log_k - std::log(h - nu * xi + kp.ratio);
}

// Power series sum_k (z^2/4)^k / (k! (nu+1)_k), returned as (value, log scale).
ScaledComplex i_series(double nu, cplx z) {
  const cplx q = 0.25 * z * z;
  const double aq = std::abs(q);
  cplx sum = 1.0, term = 1.0;
  double scale = 0.0;
  for (int k = 1; k < 1000000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    const double at = std::abs(term);
    if (at > 1e250) {
      sum *= 1e-250;
      term *= 1e-250;
      scale += 250.0 * std::log(10.0);
    }
    if (k * (k + nu) > aq && at <= eps * 0.25 * std::abs(sum)) break;
  }
  ScaledComplex s = ScaledComplex::from(sum);
  if (s.is_zero()) return s;
  s.log_mag += scale;
  return s;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw InvalidArgument("log_gamma: requires x > 0, got " + std::to_string(x));
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

BesselRegime bessel_regime(double order, double abs_arg) {
  BesselRegime r;
  r.order = order;
  r.series_limit = std::max(10.0, order / 2.0);
  r.uniform_order = uniform_order;
  r.k_series_limit = k_series_limit;
  if (order >= uniform_order)
    r.kind = BesselMethod::uniform_large_order;
  else if (abs_arg <= r.series_limit)
    r.kind = BesselMethod::series;
  else
    r.kind = BesselMethod::continued_fraction;
  return r;
}

double log_bessel_k(double order, double x) {
  if (!(x > 0.0)) throw InvalidArgument("log_bessel_k: requires x > 0, got " + std::to_string(x));
  if (!(order >= 0.0)) throw InvalidArgument("log_bessel_k: requires order >= 0");
  if (std::isinf(x)) return -inf;
  if (order >= uniform_order) return log_k_debye(order, x);
  return k_small_order(order, x).log_k;
}

ScaledComplex scaled_bessel_i(double order, cplx z) {
  if (!(order >= 0.0)) throw InvalidArgument("scaled_bessel_i: requires order >= 0");
  if (z == cplx(0.0, 0.0)) return order == 0.0 ? ScaledComplex::one() : ScaledComplex::zero();
  if (z.imag() == 0.0 && z.real() > 0.0) {
    const double x = z.real();
    const BesselRegime r = bessel_regime(order, x);
    if (r.kind == BesselMethod::uniform_large_order) return ScaledComplex::from_log(log_i_debye(order, x));
    if (r.kind == BesselMethod::continued_fraction) return ScaledComplex::from_log(log_i_cf1(order, x));
  }
  ScaledComplex s = i_series(order, z);
  const double lz = std::log(std::abs(z) / 2.0);
  return s * scaled_value(order * lz - log_gamma(order + 1.0), order * std::arg(z));
}

ScaledComplex bessel_asymptotic(BesselAsymptotic kind, double order, cplx arg) {
  auto real_positive = [&](const char* name) {
    if (arg.imag() != 0.0 || !(arg.real() > 0.0))
      throw InvalidArgument(std::string("bessel_asymptotic ") + name + ": requires a positive real argument");
    return arg.real();
  };
  switch (kind) {
    case BesselAsymptotic::K_large_arg: {
      const double x = real_positive("K_large_arg");
      return ScaledComplex::from_log(0.5 * std::log(pi / (2.0 * x)) - x);
    }
    case BesselAsymptotic::K_uniform: {
      const double x = real_positive("K_uniform");
      if (!(order > 0.0)) throw InvalidArgument("bessel_asymptotic K_uniform: requires order > 0");
      const double r = x / order;
      const double root = std::hypot(1.0, r);
      return ScaledComplex::from_log(0.5 * std::log(pi / (2.0 * order)) - 0.25 * std::log1p(r * r) +
                                     order * (std::log1p(root) - std::log(r)) - order * root);
    }
    case BesselAsymptotic::I_lemma43: {
      if (!(order > 0.0)) throw InvalidArgument("bessel_asymptotic I_lemma43: requires order > 0");
      if (arg == cplx(0.0, 0.0)) return ScaledComplex::zero();
      const cplx expo = -0.5 * std::log(2.0 * pi) - 0.5 * (order + 1.0) * std::log(order) +
                        order * std::log(arg / 2.0) + order + arg * arg / 4.0;
      return exp_scaled(expo);
    }
    case BesselAsymptotic::K_lemma43: {
      const double x = real_positive("K_lemma43");
      if (!(order > 0.0)) throw InvalidArgument("bessel_asymptotic K_lemma43: requires order > 0");
      return ScaledComplex::from_log(0.5 * std::log(pi / 2.0) + 0.5 * (order - 1.0) * std::log(order) -
                                     order * std::log(x / 2.0) - order - x * x / 4.0);
    }
  }
  throw InvalidArgument("bessel_asymptotic: unknown kind");
}

namespace detail {

double log_bessel_k_via(BesselMethod method, double order, double x) {
  switch (method) {
    case BesselMethod::uniform_large_order:
      return log_k_debye(order, x);
    case BesselMethod::series:
      return k_recur(order, x, true).log_k;
    case BesselMethod::continued_fraction:
      return k_recur(order, x, false).log_k;
  }
  return 0.0;
}

double log_bessel_i_via(BesselMethod method, double order, double x) {
  switch (method) {
    case BesselMethod::uniform_large_order:
      return log_i_debye(order, x);
    case BesselMethod::series: {
      const ScaledComplex s = i_series(order, cplx(x, 0.0));
      return s.log_mag + order * std::log(x / 2.0) - log_gamma(order + 1.0);
    }
    case BesselMethod::continued_fraction:
      return log_i_cf1(order, x);
  }
  return 0.0;
}

}  // namespace detail

}  // namespace rmx
