#include <array>
#include <cmath>

#include "rmx/specialfn.hpp"

namespace rmx {

namespace {

// Weideman's rational expansion of w(z) in the closed upper half plane.
constexpr int wn = 40;

struct Weideman {
  long double L;
  std::array<double, wn> a;  // p(Z) = sum_m a[m] Z^m
};

const Weideman& weideman() {
  static const Weideman W = [] {
    Weideman w{};
    const int M = 2 * wn, M2 = 2 * M;
    w.L = std::sqrt(wn / std::sqrt(2.0L));
    const long double pil = 3.141592653589793238462643383279502884L;
    std::array<long double, 2 * M> g{};
    for (int k = -M + 1; k <= M - 1; ++k) {
      const long double t = w.L * std::tan(k * pil / (2 * M));
      const long double f = std::exp(-t * t) * (w.L * w.L + t * t);
      g[(k + M2) % M2] = f;
    }
    for (int m = 1; m <= wn; ++m) {
      long double s = 0;
      for (int n = 0; n < M2; ++n) s += g[n] * std::cos(2 * pil * m * n / M2);
      w.a[m - 1] = static_cast<double>(s / M2);
    }
    return w;
  }();
  return W;
}

cplx w_upper(cplx z) {
  const Weideman& W = weideman();
  const double L = static_cast<double>(W.L);
  const cplx iz(-z.imag(), z.real());
  const cplx den = L - iz;
  const cplx Z = (L + iz) / den;
  cplx p = 0.0;
  for (int m = wn; m-- > 0;) p = p * Z + W.a[m];
  return 2.0 * p / (den * den) + (1.0 / std::sqrt(pi)) / den;
}

// Laplace continued fraction for large |z|, Im z >= 0.
cplx w_cf(cplx z) {
  cplx f = z;
  for (int k = 60; k >= 1; --k) f = z - (0.5 * k) / f;
  return cplx(0.0, 1.0 / std::sqrt(pi)) / f;
}

cplx w_halfplane(cplx z) { return std::abs(z) > 12.0 ? w_cf(z) : w_upper(z); }

}  // namespace

cplx faddeeva_w(cplx z) {
  if (z.imag() >= 0.0) return w_halfplane(z);
  return 2.0 * std::exp(-z * z) - w_halfplane(-z);
}

cplx erfc_complex(cplx z) {
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  // erfc(z) = e^{-z^2} w(iz), with iz in the upper half plane
  const cplx iz(-z.imag(), z.real());
  const cplx e = std::exp(-z * z);
  if (e == cplx(0.0, 0.0)) return 0.0;
  return e * w_halfplane(iz);
}

}  // namespace rmx
