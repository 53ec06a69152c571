#include "rmx/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "rmx/parallel.hpp"
#include "rmx/specialfn.hpp"

namespace rmx {

namespace {

// Sum of ScaledComplex terms against a running reference scale; terms are
// added in the order given.
class ScaledSum {
 public:
  void add(const ScaledComplex& t) {
    if (t.is_zero()) return;
    if (t.log_mag > ref_) {
      if (ref_ != -inf) acc_ *= std::exp(ref_ - t.log_mag);
      ref_ = t.log_mag;
    }
    acc_ += std::polar(std::exp(t.log_mag - ref_), t.phase);
  }
  ScaledComplex value() const {
    ScaledComplex s = ScaledComplex::from(acc_);
    if (!s.is_zero()) s.log_mag += ref_;
    return s;
  }

 private:
  double ref_ = -inf;
  cplx acc_ = 0.0;
};

// log(sum exp(x_i)) for real x_i.
class LogSumExp {
 public:
  void add(double x) {
    if (x == -inf) return;
    if (x > ref_) {
      if (ref_ != -inf) acc_ *= std::exp(ref_ - x);
      ref_ = x;
    }
    acc_ += std::exp(x - ref_);
  }
  double value() const { return acc_ > 0.0 ? ref_ + std::log(acc_) : -inf; }

 private:
  double ref_ = -inf;
  double acc_ = 0.0;
};

void require_kernel(const EnsembleParams& p, const char* who) {
  require_open_tau(p, who);
  if (!(p.nu > -1.0)) throw InvalidArgument(std::string(who) + ": requires nu > -1");
}

void require_nonzero(cplx z, const char* who) {
  if (z == cplx(0.0, 0.0)) throw InvalidArgument(std::string(who) + ": argument must be nonzero");
}

double log_k(double order, double x) { return log_bessel_k(std::abs(order), x); }

double n_delta(const EnsembleParams& p) { return p.N * p.delta_or_throw(); }

// 0.5 * (-N Q_N(zeta)) in log form: sqrt(K_nu(AN|zeta|)) |zeta|^{nu/2} e^{N B Re zeta / 2}
double half_weight_q(cplx zeta, const EnsembleParams& p) {
  const double A = p.A_or_throw(), B = p.B_or_throw();
  const double r = std::abs(zeta);
  return 0.5 * log_k(p.nu, A * p.N * r) + 0.5 * p.nu * std::log(r) + 0.5 * p.N * B * zeta.real();
}

}  // namespace

std::vector<ScaledComplex> laguerre_sequence(int count, double nu, cplx z) {
  if (!(nu > -1.0)) throw InvalidArgument("laguerre: requires nu > -1");
  if (count < 0) throw InvalidArgument("laguerre: negative degree");
  std::vector<ScaledComplex> out(count);
  if (count == 0) return out;
  out[0] = ScaledComplex::one();
  if (count == 1) return out;
  cplx prev = 1.0, cur = nu + 1.0 - z;
  double scale = 0.0;
  out[1] = ScaledComplex::from(cur);
  for (int j = 1; j + 1 < count; ++j) {
    const cplx next = ((2.0 * j + nu + 1.0 - z) * cur - (j + nu) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(cur), std::abs(prev));
    if (big > 1e150 || (big < 1e-150 && big > 0.0)) {
      cur /= big;
      prev /= big;
      scale += std::log(big);
    }
    ScaledComplex s = ScaledComplex::from(cur);
    if (!s.is_zero()) s.log_mag += scale;
    out[j + 1] = s;
  }
  return out;
}

ScaledComplex laguerre_scaled(int j, double nu, cplx z) {
  if (j < 0) throw InvalidArgument("laguerre: negative degree");
  return laguerre_sequence(j + 1, nu, z)[j];
}

double log_norm_h(int j, const EnsembleParams& p) {
  require_kernel(p, "log_norm_h");
  if (j < 0) throw InvalidArgument("log_norm_h: negative index");
  const double A = p.A_or_throw(), B = p.B_or_throw();
  const double nu = p.nu;
  return -std::log(A) - (nu + 2.0) * std::log(static_cast<double>(p.N)) +
         (nu + 1.0) * std::log(2.0 * A / ((A - B) * (A + B))) + log_gamma(j + nu + 1.0) - log_gamma(j + 1.0) +
         2.0 * j * std::log(A / B);
}

KernelEval kernel_wishart(cplx zeta, cplx eta, const EnsembleParams& p) {
  require_kernel(p, "kernel_wishart");
  require_nonzero(zeta, "kernel_wishart");
  require_nonzero(eta, "kernel_wishart");
  const double c = p.c_or_throw();
  const auto Lz = laguerre_sequence(p.N, p.nu, c * zeta);
  const auto Lw = eta == zeta ? Lz : laguerre_sequence(p.N, p.nu, c * eta);
  ScaledSum sum;
  for (int j = 0; j < p.N; ++j) sum.add(Lz[j] * Lw[j].conj() * ScaledComplex::from_log(-log_norm_h(j, p)));
  KernelEval out;
  out.value = sum.value() * ScaledComplex::from_log(half_weight_q(zeta, p) + half_weight_q(eta, p));
  out.gauge = Gauge::raw;
  out.params_snapshot = p;
  return out;
}

KernelEval kernel_dirac(cplx zeta, cplx eta, const EnsembleParams& p) {
  KernelEval out = kernel_wishart(zeta * zeta, eta * eta, p);
  out.value *= ScaledComplex::from_log(std::log(2.0) + std::log(std::abs(zeta)) + std::log(std::abs(eta)));
  return out;
}

KernelEval kernel_dirac_direct(cplx zeta, cplx eta, const EnsembleParams& p) {
  require_kernel(p, "kernel_dirac");
  require_nonzero(zeta, "kernel_dirac");
  require_nonzero(eta, "kernel_dirac");
  const double A = p.A_or_throw(), B = p.B_or_throw();
  const double c = (A * A - B * B) * p.N / (2.0 * B);
  const double nu = p.nu;
  // e^{-N V_N(zeta)/2} with N V_N = -log K_nu(AN|zeta|^2) - (2nu+2) log|zeta| - N B Re zeta^2
  auto half_weight_v = [&](cplx z) {
    const double r = std::abs(z);
    return 0.5 * log_k(nu, A * p.N * r * r) + (nu + 1.0) * std::log(r) + 0.5 * p.N * B * (z * z).real();
  };
  const auto Lz = laguerre_sequence(p.N, nu, c * zeta * zeta);
  const auto Lw = laguerre_sequence(p.N, nu, c * eta * eta);
  // log(h_j/2) built by the ratio h_{j+1}/h_j = (j+nu+1)/(j+1) (A/B)^2
  double log_half_h = -std::log(A) - (nu + 2.0) * std::log(static_cast<double>(p.N)) +
                      (nu + 1.0) * std::log(2.0 * A / (A * A - B * B)) + log_gamma(nu + 1.0) - std::log(2.0);
  const double log_ab2 = 2.0 * std::log(A / B);
  ScaledSum sum;
  for (int j = 0; j < p.N; ++j) {
    sum.add(Lz[j] * Lw[j].conj() * ScaledComplex::from_log(-log_half_h));
    log_half_h += std::log((j + nu + 1.0) / (j + 1.0)) + log_ab2;
  }
  KernelEval out;
  out.value = sum.value() * ScaledComplex::from_log(half_weight_v(zeta) + half_weight_v(eta));
  out.gauge = Gauge::raw;
  out.params_snapshot = p;
  return out;
}

double density_dirac(cplx zeta, const EnsembleParams& p) {
  require_kernel(p, "density_dirac");
  if (zeta == cplx(0.0, 0.0)) return 0.0;
  const double A = p.A_or_throw(), B = p.B_or_throw();
  const double nu = p.nu;
  const double N = p.N;
  const double r2 = std::norm(zeta);
  const cplx z2 = zeta * zeta;
  const double pre = std::log(2.0 * A) + (nu + 2.0) * std::log(N) + (nu + 1.0) * std::log((A * A - B * B) / (2.0 * A)) +
                     log_k(nu, A * N * r2) + (nu + 1.0) * std::log(r2) + B * N * z2.real();
  const auto L = laguerre_sequence(p.N, nu, (A * A - B * B) / (2.0 * B) * N * z2);
  LogSumExp sum;
  const double lba = std::log(B / A);
  for (int j = 0; j < p.N; ++j)
    sum.add(log_gamma(j + 1.0) - log_gamma(j + nu + 1.0) + 2.0 * j * lba + 2.0 * L[j].log_mag);
  return std::exp(pre + sum.value());
}

KernelEval rescaled_kernel_dirac(cplx z, cplx w, const EnsembleParams& p) {
  const double nd = n_delta(p);
  const double s = std::pow(nd, 0.25);
  KernelEval out = kernel_dirac(z / s, w / s, p);
  out.value *= ScaledComplex::from_log(-0.5 * std::log(nd));
  return out;
}

KernelEval rescaled_kernel_wishart(cplx z, cplx w, const EnsembleParams& p) {
  const double nd = n_delta(p);
  const double s = std::sqrt(nd);
  KernelEval out = kernel_wishart(z / s, w / s, p);
  out.value *= ScaledComplex::from_log(-std::log(nd));
  return out;
}

double rescaled_density(cplx z, const EnsembleParams& p) {
  require_kernel(p, "rescaled_density");
  if (!(p.nu > 0.0)) throw InvalidArgument("rescaled_density: requires nu > 0");
  if (z == cplx(0.0, 0.0)) return 0.0;
  const double nu = p.nu, tau = p.tau;
  const double s = 1.0 - tau * tau;
  const double a = p.a_or_throw();
  const double rn = std::sqrt(nu);
  const double r2 = std::norm(z);
  const cplx z2 = z * z;
  const double pre = std::log(4.0) + (0.5 * nu + 1.0) * std::log(nu) + (nu + 1.0) * std::log(s) +
                     log_k(nu, 2.0 * rn * r2) + (nu + 1.0) * std::log(r2) + 2.0 * tau * rn * z2.real();
  const auto L = laguerre_sequence(p.N, nu, a * z2);
  LogSumExp sum;
  const double lt = std::log(tau);
  for (int j = 0; j < p.N; ++j)
    sum.add(2.0 * j * lt + log_gamma(j + 1.0) - log_gamma(j + nu + 1.0) + 2.0 * L[j].log_mag);
  return std::exp(pre + sum.value());
}

double rescaled_density_via_kernel(cplx z, const EnsembleParams& p) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  return std::exp(rescaled_kernel_dirac(z, z, p).value.log_mag);
}

double corr_k(const std::vector<cplx>& points, const EnsembleParams& p, bool rescaled) {
  const int k = static_cast<int>(points.size());
  if (k < 1 || k > 8) throw InvalidArgument("corr_k: requires 1 <= k <= 8 points");
  Eigen::MatrixXcd M(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const KernelEval e = rescaled ? rescaled_kernel_dirac(points[i], points[j], p)
                                    : kernel_dirac(points[i], points[j], p);
      M(i, j) = e.value.to_complex();
      M(j, i) = std::conj(M(i, j));
      if (i == j) M(i, i) = M(i, i).real();
    }
  if (k == 1) return M(0, 0).real();
  return M.partialPivLu().determinant().real();
}

Regime classify_regime(double alpha, double tau) {
  if (!(alpha > 0.0)) throw InvalidArgument("limit kernel: requires alpha > 0");
  const double tc = 1.0 / std::sqrt(1.0 + alpha);
  if (std::abs(tau - tc) <= 1e-12) return Regime::critical;
  return tau < tc ? Regime::bulk : Regime::gapped;
}

cplx ginibre_kernel(cplx z, cplx w) { return std::exp(z * std::conj(w) - 0.5 * std::norm(z) - 0.5 * std::norm(w)); }

cplx limit_kernel(cplx z, cplx w, double alpha, Regime regime) {
  if (!(alpha > 0.0)) throw InvalidArgument("limit_kernel: requires alpha > 0");
  const double m = std::abs(z * w);
  switch (regime) {
    case Regime::bulk:
      return 2.0 * m * ginibre_kernel(z * z, w * w);
    case Regime::critical:
      if (m == 0.0) return 0.0;
      return m * ginibre_kernel(z * z, w * w) * erfc_complex(-(z * z + std::conj(w * w)) / std::sqrt(2.0));
    case Regime::gapped:
      return 0.0;
  }
  return 0.0;
}

cplx limit_kernel(cplx z, cplx w, double alpha, double tau) {
  return limit_kernel(z, w, alpha, classify_regime(alpha, tau));
}

IkParams default_ik_params(int k, double tau) { return {k, 0.5 * (1.0 + tau * tau), 64}; }

ScaledComplex ik_sum(int k, cplx z, const EnsembleParams& p) {
  require_kernel(p, "ik_sum");
  if (!(p.nu > 0.0)) throw InvalidArgument("ik_sum: requires nu > 0");
  if (k < 0 || k >= p.N) throw InvalidArgument("ik_sum: requires 0 <= k <= N-1");
  const double tau = p.tau, nu = p.nu;
  const double a = p.a_or_throw();
  const auto L = laguerre_sequence(p.N - k, nu + 2.0 * k, a * z);
  ScaledSum sum;
  const double lt2 = 2.0 * std::log(tau);
  for (int j = 0; j < p.N - k; ++j) sum.add(L[j] * ScaledComplex::from_log(j * lt2));
  return sum.value() * ScaledComplex::from_log((nu + 2.0 * k + 1.0) * std::log1p(-tau * tau)) *
         exp_scaled(tau * std::sqrt(nu) * z);
}

cplx ik_geometric_factor(cplx s, double tau, int M) {
  const double t2 = tau * tau;
  const cplx q = t2 / s;
  if (std::abs(s - t2) < 1e-6 * t2) {
    // (1/s) sum_{i<M} q^i = (1/s) sum_n C(M, n+1) (q-1)^n
    const cplx e = q - 1.0;
    cplx acc = 0.0, pw = 1.0;
    double binom = M;  // C(M, 1)
    for (int n = 0; n < 6 && n < M; ++n) {
      acc += binom * pw;
      pw *= e;
      binom *= static_cast<double>(M - n - 1) / (n + 2);
    }
    return acc / s;
  }
  return (1.0 - std::pow(q, M)) / (s - t2);
}

namespace {

struct IkIntegrand {
  double tau, t2, expo;
  int M;
  cplx tz;
  // f(s) s, whose mean over a circle about 0 is the contour integral
  ScaledComplex operator()(cplx s) const {
    const cplx lg = -expo * std::log((1.0 - s) / (1.0 - t2)) + tz * (1.0 - s / (1.0 - s) * (1.0 - t2) / t2);
    return exp_scaled(lg) * ScaledComplex::from(ik_geometric_factor(s, tau, M) * s);
  }
};

IkIntegrand ik_integrand(int k, cplx z, const EnsembleParams& p, const char* who) {
  require_kernel(p, who);
  if (!(p.nu > 0.0)) throw InvalidArgument(std::string(who) + ": requires nu > 0");
  if (k < 0 || k >= p.N) throw InvalidArgument(std::string(who) + ": requires 0 <= k <= N-1");
  return {p.tau, p.tau * p.tau, p.nu + 2.0 * k + 1.0, p.N - k, p.tau * std::sqrt(p.nu) * z};
}

}  // namespace

IkParams tuned_ik_params(int k, cplx z, const EnsembleParams& p) {
  const IkIntegrand f = ik_integrand(k, z, p, "tuned_ik_params");
  const double lo = std::max(1.02 * f.t2, 0.02), hi = 0.98;
  double best_r = 0.5 * (1.0 + f.t2), best = inf;
  for (int i = 0; i <= 48; ++i) {
    const double r = lo * std::pow(hi / lo, i / 48.0);
    double peak = -inf;
    for (int t = 0; t < 64; ++t) peak = std::max(peak, f(std::polar(r, 2.0 * pi * t / 64)).log_mag);
    if (peak < best) {
      best = peak;
      best_r = r;
    }
  }
  return {k, best_r, 64};
}

ScaledComplex ik_contour(int k, cplx z, const EnsembleParams& p, const IkParams& ik) {
  const IkIntegrand f = ik_integrand(k, z, p, "ik_contour");
  const double r = ik.contour_radius;
  if (!(r > f.t2 && r < 1.0)) throw InvalidArgument("ik_contour: radius must lie in (tau^2, 1)");
  auto log_integrand_times_s = [&](double theta) { return f(std::polar(r, theta)); };
  auto trapezoid = [&](int n) {
    ScaledSum sum;
    for (int i = 0; i < n; ++i) sum.add(log_integrand_times_s(2.0 * pi * i / n));
    return sum.value() * ScaledComplex::from_log(-std::log(static_cast<double>(n)));
  };

  int n = std::max(ik.nodes, 64);
  ScaledComplex prev = trapezoid(n);
  while (n < ik_max_nodes) {
    n *= 2;
    const ScaledComplex cur = trapezoid(n);
    const cplx diff = (cur - prev).to_complex();
    const double mag = std::exp(cur.log_mag);
    prev = cur;
    if (std::abs(diff) <= 1e-12 * mag || (cur.is_zero() && diff == cplx(0.0))) return cur;
    if (n >= 1024) {
      // roundoff floor: relative to the largest sampled term
      ScaledComplex peak = ScaledComplex::zero();
      for (int i = 0; i < n; i += n / 256) {
        const ScaledComplex t = log_integrand_times_s(2.0 * pi * i / n);
        if (t.log_mag > peak.log_mag) peak = t;
      }
      if (std::abs(diff) <= 1e-14 * std::exp(peak.log_mag)) return cur;
    }
  }
  throw NumericalFailure("ik_contour: trapezoidal rule did not converge within 65536 nodes");
}

KernelEval kernel_via_ik(cplx z, cplx w, const EnsembleParams& p, int m) {
  require_kernel(p, "kernel_via_ik");
  require_nonzero(z, "kernel_via_ik");
  require_nonzero(w, "kernel_via_ik");
  if (!(p.nu > 0.0)) throw InvalidArgument("kernel_via_ik: requires nu > 0");
  if (m < 1 || m > p.N) throw InvalidArgument("kernel_via_ik: requires 1 <= m <= N");
  const double nu = p.nu, rn = std::sqrt(nu);
  const double pre = std::log(2.0) + (0.5 * nu + 1.0) * std::log(nu) +
                     0.5 * (log_k(nu, 2.0 * rn * std::abs(z)) + log_k(nu, 2.0 * rn * std::abs(w))) +
                     0.5 * nu * std::log(std::abs(z * w));
  const ScaledComplex zw = ScaledComplex::from(z * std::conj(w));
  const cplx arg = z + std::conj(w);
  ScaledSum sum;
  for (int k = 0; k < m; ++k) {
    const ScaledComplex coef = pow(zw, k) * ScaledComplex::from_log(k * std::log(nu) - log_gamma(k + 1.0) -
                                                                     log_gamma(k + nu + 1.0));
    sum.add(coef * ik_sum(k, arg, p));
  }
  KernelEval out;
  out.value = sum.value() * ScaledComplex::from_log(pre);
  out.gauge = Gauge::raw;
  out.params_snapshot = p;
  return out;
}

int default_truncation(int N) { return static_cast<int>(std::ceil(std::pow(static_cast<double>(N), 0.25))); }

std::vector<CutRow> kernel_cut(const EnsembleParams& p, char axis, const Range& range, int threads) {
  if (axis != 'x' && axis != 'y') throw InvalidArgument("kernel_cut: axis must be x or y");
  const std::vector<double> xs = range.values();
  std::vector<CutRow> rows(xs.size());
  const double alpha = p.alpha_N;
  const Regime regime = classify_regime(alpha, p.tau);
  parallel_for(static_cast<int>(xs.size()), threads, [&](int i) {
    const cplx z = axis == 'x' ? cplx(xs[i], 0.0) : cplx(0.0, xs[i]);
    CutRow r;
    r.coord = xs[i];
    r.axis = axis;
    r.finite_N = rescaled_density(z, p);
    r.limit = limit_kernel(z, z, alpha, regime).real();
    r.abs_err = std::abs(r.finite_N - r.limit);
    rows[i] = r;
  });
  return rows;
}

void write_cut_csv(std::ostream& out, const std::vector<CutRow>& rows) {
  out << "coord,axis,finite_N,limit,abs_err\n";
  for (const auto& r : rows)
    out << format_double(r.coord) << ',' << r.axis << ',' << format_double(r.finite_N) << ','
        << format_double(r.limit) << ',' << format_double(r.abs_err) << '\n';
}

}  // namespace rmx
