#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "rmx/core.hpp"

namespace rmx {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_wg = {0.129484966168869693270611432679082,
                                                  0.279705391489276667901467771423780,
                                                  0.381830050505118944950369775488975,
                                                  0.417959183673469387755102040816327};

template <typename F>
QuadResult gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * gk15_wk[7], rg = fc * gk15_wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk15_x[j];
    const double s = f(c - dx) + f(c + dx);
    rk += gk15_wk[j] * s;
    if (j % 2 == 1) rg += gk15_wg[j / 2] * s;
  }
  return {rk * h, std::abs((rk - rg) * h), true};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the subinterval with the
// largest error estimate is bisected until the total is below tol.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double tol, int max_intervals = 4000) {
  if (a == b) return {0.0, 0.0, true};
  struct Piece {
    double a, b;
    QuadResult r;
    bool operator<(const Piece& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Piece> heap;
  const QuadResult first = detail::gk15(f, a, b);
  heap.push({a, b, first});
  double value = first.value, error = first.error;
  int intervals = 1;
  auto floor = [](double v) { return 100.0 * std::numeric_limits<double>::epsilon() * std::abs(v); };
  while (error > std::max(tol, floor(value)) && intervals < max_intervals) {
    const Piece p = heap.top();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) break;
    heap.pop();
    const QuadResult l = detail::gk15(f, p.a, m), r = detail::gk15(f, m, p.b);
    value += l.value + r.value - p.r.value;
    error += l.error + r.error - p.r.error;
    heap.push({p.a, m, l});
    heap.push({m, p.b, r});
    ++intervals;
  }
  // Re-sum to shed drift from the incremental updates.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().r.value;
    e += heap.top().r.error;
    heap.pop();
  }
  return {v, e, e <= std::max(tol, floor(v))};
}

// Throwing variant; `what` names the caller.
template <typename F>
double integrate_or_throw(const F& f, double a, double b, double tol, const std::string& what) {
  const QuadResult r = integrate(f, a, b, tol);
  if (!r.converged || !std::isfinite(r.value))
    throw QuadratureFailure(what + ": quadrature did not reach tolerance", r.value, r.error);
  return r.value;
}

}  // namespace rmx
