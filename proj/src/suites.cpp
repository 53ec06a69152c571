#include "rmx/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "rmx/coulomb.hpp"
#include "rmx/ensembles.hpp"
#include "rmx/globallaw.hpp"
#include "rmx/kernels.hpp"
#include "rmx/random.hpp"
#include "rmx/specialfn.hpp"
#include "rmx/verify.hpp"

namespace rmx {

namespace {

#include "reference_values.inc"

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult at_most(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(name), value, bound, value >= bound, std::move(detail)};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<cplx> pooled(const std::vector<SpectrumSample>& samples) {
  std::vector<cplx> out;
  for (const auto& s : samples)
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) out.push_back(s.eigenvalues[i]);
  return out;
}

// 1. Global law of the Wishart eigenvalues.
void criterion_global_law(CriterionResult& r, const SuiteOptions& o) {
  const auto t0 = Clock::now();
  const EnsembleParams p = make_params(1000, 1000, 0.5);
  const auto samples = sample_trials(p, SampleMethod::wishart, o.seed, 20, o.threads);
  const std::vector<cplx> pts = pooled(samples);
  const DropletGeometry g = droplet_geometry(1.0, 0.5);
  Grid2D grid{g.x0 - g.semi_major, g.x0 + g.semi_major, -g.semi_minor, g.semi_minor, 40, 40};
  DistanceOptions dopt;
  dopt.points = &pts;
  dopt.droplet = g;
  dopt.dilation = 1.05;
  const ComparisonReport rep =
      density_distance(histogram2d(pts, grid), [](cplx z) { return wishart_density(z, 1.0, 0.5); }, dopt);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  r.checks.push_back(at_most("L1 distance, 40x40 grid", rep.l1_distance, 0.05,
                             "sup over cells with >= 20 expected: " + fmt(rep.sup_distance)));
  r.checks.push_back(at_least("inside fraction, ellipse dilated 5%", rep.inside_fraction, 0.99));
  r.checks.push_back(at_most("runtime seconds", secs, 600.0));
}

struct GapResult {
  int components = 1;
  double left = 0, right = 0;  // gap edges
  double gap = 0, spacing = 0;
};

// Real parts of all eigenvalues; the gap straddling 0 against 10x the mean spacing.
GapResult real_axis_gap(const std::vector<cplx>& pts) {
  std::vector<double> x;
  for (const cplx& z : pts) x.push_back(z.real());
  std::sort(x.begin(), x.end());
  GapResult g;
  g.spacing = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  const auto it = std::upper_bound(x.begin(), x.end(), 0.0);
  g.right = it == x.end() ? 0.0 : *it;
  g.left = it == x.begin() ? 0.0 : *(it - 1);
  g.gap = g.right - g.left;
  g.components = g.gap > 10.0 * g.spacing ? 2 : 1;
  return g;
}

// 2. Splitting of the Dirac droplet at alpha = 1.
void criterion_split(CriterionResult& r, const SuiteOptions& o) {
  for (double tau : {0.5, 0.85}) {
    const EnsembleParams p = make_params(1000, 1000, tau);
    const auto samples = sample_trials(p, SampleMethod::dirac, o.seed, 2, o.threads);
    const GapResult g = real_axis_gap(pooled(samples));
    const int expect = tau < 0.6 ? 1 : 2;
    const std::string t = "tau=" + fmt(tau);
    r.checks.push_back({t + " support components", static_cast<double>(g.components), static_cast<double>(expect),
                        g.components == expect, "gap " + fmt(g.gap) + ", mean spacing " + fmt(g.spacing)});
    const EdgePoints e = edge_points(1.0, tau);
    if (expect == 2 && e.inner) {
      r.checks.push_back(at_most(t + " right inner edge relative error", std::abs(g.right - *e.inner) / *e.inner,
                                 0.10, "empirical " + fmt(g.right) + " vs " + fmt(*e.inner)));
      r.checks.push_back(at_most(t + " left inner edge relative error", std::abs(-g.left - *e.inner) / *e.inner,
                                 0.10, "empirical " + fmt(g.left) + " vs " + fmt(-*e.inner)));
    }
  }
}

// 3. Multi-critical local density along both axes.
void criterion_local_critical(CriterionResult& r, const SuiteOptions& o) {
  const auto t0 = Clock::now();
  const double tc = 1.0 / std::sqrt(2.0);
  const EnsembleParams p = make_params(1000, 1000, tc);
  const Range range{-2.0, 2.0, 201};
  double worst = 0.0, peak = 0.0;
  for (char axis : {'x', 'y'}) {
    for (const CutRow& row : kernel_cut(p, axis, range, o.threads)) {
      worst = std::max(worst, row.abs_err);
      peak = std::max(peak, row.limit);
    }
  }
  r.checks.push_back(at_most("max |R_N - R| / max R over x and y cuts", worst / peak, 0.05,
                             "max abs err " + fmt(worst) + ", max R " + fmt(peak)));
  const double spot = rescaled_density(1.0, p);
  r.checks.push_back(at_most("R_N(1) relative to 1.9545", std::abs(spot / 1.9545 - 1.0), 0.05, "R_N(1) = " + fmt(spot)));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  r.checks.push_back(at_most("runtime seconds", secs, 120.0));
}

// 4. Bulk and gapped limits of the rescaled diagonal.
void criterion_classification(CriterionResult& r, const SuiteOptions&) {
  const cplx z = 0.8;
  const double bulk = rescaled_density(z, make_params(1600, 1600, 0.5));
  const double target = 2.0 * std::norm(z);
  r.checks.push_back(at_most("tau=0.5 relative deviation from 2|z|^2", std::abs(bulk / target - 1.0), 0.05,
                             "R_N(0.8) = " + fmt(bulk)));
  const double gapped = rescaled_density(z, make_params(1600, 1600, 0.85));
  r.checks.push_back(at_most("tau=0.85 |R_N(0.8)|", std::abs(gapped), 0.05));
}

// 5. Independent evaluation paths agree.
void criterion_oracles(CriterionResult& r, const SuiteOptions& opts) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double tau : {0.3, 0.5, 0.7}) {
    const EnsembleParams p = make_params(16, 16, tau);
    for (int k : {0, 2, 5})
      for (cplx z : {cplx(-1.5, 0.0), cplx(0.8, 0.6), cplx(0.0, 2.5)}) {
        const cplx a = ik_sum(k, z, p).to_complex();
        const cplx b = ik_contour(k, z, p, tuned_ik_params(k, z, p)).to_complex();
        worst = std::max(worst, rel(b, a));
      }
  }
  r.checks.push_back(at_most("ik_sum vs ik_contour, 27 cases", worst, 1e-10));

  worst = 0.0;
  double raw = 0.0;
  const std::pair<cplx, cplx> pairs[] = {
      {{0.6, 0.3}, {0.4, -0.5}}, {{1.1, 0.0}, {1.1, 0.0}}, {{0.0, 0.2}, {0.9, 0.1}}};
  for (double nu : {10.0, 2.5}) {
    const EnsembleParams p = make_params(50, nu, 0.5);
    for (const auto& [a, b] : pairs) {
      const cplx x = kernel_dirac_direct(a, b, p).value.to_complex();
      const cplx y = kernel_dirac(a, b, p).value.to_complex();
      // relative to the Cauchy-Schwarz scale sqrt(K(a,a) K(b,b)) >= |K(a,b)|
      const double scale = std::sqrt(std::abs(kernel_dirac(a, a, p).value.to_complex()) *
                                     std::abs(kernel_dirac(b, b, p).value.to_complex()));
      worst = std::max(worst, std::abs(x - y) / scale);
      raw = std::max(raw, rel(x, y));
    }
  }
  r.checks.push_back(at_most("kernel_dirac: squared-variable vs direct, relative to sqrt(K(a,a)K(b,b))", worst, 1e-10));
  r.checks.back().detail = "max plain relative difference " + fmt(raw);

  worst = 0.0;
  {
    const EnsembleParams p = make_params(50, 50, 0.5);
    const double ts = 0.5 * std::sqrt(50.0);
    const CounterNormal gen(SeedSpec{opts.seed, 5});
    for (int i = 0; i < 5; ++i) {
      const auto [x1, y1] = gen.uniform_pair(0, 2 * i);
      const auto [x2, y2] = gen.uniform_pair(0, 2 * i + 1);
      const cplx z(2.0 * x1 - 1.0, 2.0 * y1 - 1.0), w(2.0 * x2 - 1.0, 2.0 * y2 - 1.0);
      const cplx via = kernel_via_ik(z, w, p, p.N).value.to_complex();
      const cplx cocycle = std::exp(cplx(0.0, ts * (z.imag() - w.imag())));
      const cplx direct = rescaled_kernel_wishart(z, w, p).value.to_complex() * cocycle;
      worst = std::max(worst, rel(via, direct));
    }
  }
  r.checks.push_back(at_most("kernel_via_ik(m=N) vs direct kernel", worst, 1e-8));

  worst = 0.0;
  for (const auto& ref : laguerre_reference) {
    const cplx got = laguerre_scaled(ref.j, ref.nu, {ref.re, ref.im}).to_complex();
    worst = std::max(worst, rel(got, {ref.value_re, ref.value_im}));
  }
  r.checks.push_back(at_most("Laguerre recurrence vs 40-digit values, j <= 30", worst, 1e-10));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  r.checks.push_back(at_most("runtime seconds", secs, 60.0));
}

// 6. Orthogonality of the planar Laguerre polynomials.
void criterion_orthogonality(CriterionResult& r, const SuiteOptions&) {
  const EnsembleParams p = make_params(8, 2, 0.5);
  const Eigen::MatrixXcd G = orthogonality_matrix(p, 5);
  double diag = 0.0, off = 0.0;
  for (int j = 0; j <= 5; ++j)
    for (int k = 0; k <= 5; ++k) {
      const double hj = std::exp(log_norm_h(j, p)), hk = std::exp(log_norm_h(k, p));
      if (j == k)
        diag = std::max(diag, std::abs(G(j, j) - 0.5 * hj) / (0.5 * hj));
      else
        off = std::max(off, std::abs(G(j, k)) / std::sqrt(hj * hk));
    }
  r.checks.push_back(at_most("diagonal relative to h_j/2", diag, 1e-6));
  r.checks.push_back(at_most("off-diagonal relative to sqrt(h_j h_k)", off, 1e-6));
}

// 7. Potential theory of the droplet.
void criterion_potential(CriterionResult& r, const SuiteOptions&) {
  double worst = 0.0;
  for (double alpha : {0.0, 1.0}) {
    std::vector<double> taus = {0.3, 0.5};
    if (alpha > 0.0) taus.push_back(1.0 / std::sqrt(1.0 + alpha));
    for (double tau : taus) worst = std::max(worst, std::abs(mass_integral(alpha, tau, 1e-10) - 1.0));
  }
  r.checks.push_back(at_most("|mass - 1| over alpha in {0,1}, tau in {0.3,0.5,tau_c}", worst, 1e-8,
                             "tau_c = 1 for alpha = 0 has no droplet and is skipped"));

  for (const auto& [alpha, tau] : {std::pair{1.0, 0.5}, std::pair{0.0, 0.3}}) {
    const std::string tag = "alpha=" + fmt(alpha) + " tau=" + fmt(tau) + " ";
    const DropletGeometry g = droplet_geometry(alpha, tau);
    std::vector<double> inner;
    for (double s : {0.0, 0.35, 0.7, 0.95})
      for (double phi : {0.4, 2.2, 4.4}) {
        const cplx z(g.x0 + s * g.semi_major * std::cos(phi), s * g.semi_minor * std::sin(phi));
        inner.push_back(effective_potential(z, alpha, tau, 1e-9));
      }
    const auto [lo, hi] = std::minmax_element(inner.begin(), inner.end());
    const double level = 0.5 * (*lo + *hi);
    r.checks.push_back(at_most(tag + "effective potential spread on the droplet", *hi - *lo, 1e-4));
    double below = inf;
    for (double s : {1.1, 1.5, 2.5})
      for (double phi : {0.4, 2.2, 4.4}) {
        const cplx z(g.x0 + s * g.semi_major * std::cos(phi), s * g.semi_minor * std::sin(phi));
        below = std::min(below, effective_potential(z, alpha, tau, 1e-9) - level);
      }
    r.checks.push_back(at_least(tag + "min outside excess over the droplet level", below, -1e-4));

    double schwarz = 0.0, cont = 0.0;
    for (int k = 0; k < 16; ++k) {
      const cplx zeta = conformal_map(std::polar(1.0, 2.0 * pi * k / 16.0 + 0.1), g, tau);
      schwarz = std::max(schwarz, std::abs(schwarz_function(zeta, alpha, tau) - std::conj(zeta)));
      cont = std::max(cont, std::abs(cauchy_transform_interior(zeta, alpha, tau) -
                                     cauchy_transform_exterior(zeta, alpha, tau)));
    }
    r.checks.push_back(at_most(tag + "Schwarz residual at 16 boundary points", schwarz, 1e-9));
    r.checks.push_back(at_most(tag + "Cauchy transform jump at 16 boundary points", cont, 1e-9));
  }
}

// 8. Coulomb gas minimization.
void criterion_gas(CriterionResult& r, const SuiteOptions& o) {
  MinimizeOptions mo;
  mo.max_iters = 100000;
  mo.grad_tol = 1e-8;
  mo.threads = o.threads;
  const MinimizeResult res = gas_minimize(uniform_box_config(64, 1.0, 0.5, o.seed), mo);
  r.checks.push_back({"converged to grad_tol 1e-8", res.config.grad_norm, 1e-8,
                      res.status == MinimizeStatus::converged,
                      "iterations " + std::to_string(res.log.back().iter)});
  const Coverage cov = coverage_metric(res.config, droplet_geometry(1.0, 0.5), 1.0);
  r.checks.push_back(at_least("inside fraction, undilated ellipse", cov.inside_fraction, 0.99));

  const GasConfig cfg = uniform_box_config(16, 1.0, 0.5, o.seed + 1);
  const Eigen::VectorXcd g = gas_gradient(cfg);
  double worst = 0.0;
  const double h = 1e-6;
  for (int j = 0; j < cfg.size(); ++j)
    for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
      Eigen::VectorXcd plus = cfg.points(), minus = cfg.points();
      plus[j] += h * dir;
      minus[j] -= h * dir;
      const double fd = (gas_energy(GasConfig(plus, 1.0, 0.5)) - gas_energy(GasConfig(minus, 1.0, 0.5))) / (2.0 * h);
      const double an = dir.real() != 0.0 ? g[j].real() : g[j].imag();
      worst = std::max(worst, std::abs(fd - an));
    }
  worst /= g.cwiseAbs().maxCoeff();
  r.checks.push_back(at_most("gradient vs central differences (relative to max component)", worst, 1e-6));
}

// 9. Special functions.
void criterion_specialfn(CriterionResult& r, const SuiteOptions& o) {
  double w = 0.0;
  for (double nu : {0.0, 0.3, 1.0, 2.5, 10.0, 49.5, 50.0, 120.0, 500.0})
    for (double x : {1e-3, 0.5, 2.0, 9.9, 10.1, 40.0, 250.0, 700.0}) {
      const ScaledComplex i0 = scaled_bessel_i(nu, x), i1 = scaled_bessel_i(nu + 1.0, x);
      const double k0 = log_bessel_k(nu, x), k1 = log_bessel_k(nu + 1.0, x);
      const double lx = std::log(x);
      const double t = std::exp(i0.log_mag + k1 + lx) + std::exp(i1.log_mag + k0 + lx);
      w = std::max(w, std::abs(t - 1.0));
    }
  r.checks.push_back(at_most("Wronskian x(I_v K_v+1 + I_v+1 K_v) - 1", w, 1e-9));

  double lem = 0.0;
  const double nu = 500.0, rn = std::sqrt(nu);
  for (cplx z : {cplx(0.25, 0.0), cplx(0.5, 0.0), cplx(1.0, 0.0), cplx(0.6, 0.6), cplx(0.0, 0.9)}) {
    const ScaledComplex ex = scaled_bessel_i(nu, rn * z);
    const ScaledComplex as = bessel_asymptotic(BesselAsymptotic::I_lemma43, nu, z);
    lem = std::max(lem, std::abs((as / ex).to_complex() - 1.0));
  }
  for (double x : {0.25, 0.5, 1.0}) {
    const double ex = log_bessel_k(nu, rn * x);
    const ScaledComplex as = bessel_asymptotic(BesselAsymptotic::K_lemma43, nu, x);
    lem = std::max(lem, std::abs(std::exp(as.log_mag - ex) - 1.0));
  }
  r.checks.push_back(at_most("large-order I and K approximants at nu=500, |z| <= 1", lem, 1e-3));

  double e = 0.0;
  for (const auto& ref : erfc_reference) {
    const cplx want(ref.erfc_re, ref.erfc_im);
    e = std::max(e, std::abs(erfc_complex({ref.re, ref.im}) - want) / std::max(1.0, std::abs(want)));
  }
  r.checks.push_back(at_most("erfc vs 40-digit values on |z| <= 10 (error / max(1,|erfc|))", e, 1e-12));

  const CounterNormal rng(SeedSpec{o.seed, 9});
  int bad = 0;
  double lo = inf, hi = -inf;
  for (int i = 0; i < 100; ++i) {
    const auto [u, v] = rng.uniform_pair(0, static_cast<std::uint64_t>(i));
    const auto [s, t] = rng.uniform_pair(1, static_cast<std::uint64_t>(i));
    const int N = 10 + static_cast<int>(u * 90.0);
    const int k = static_cast<int>(v * N);
    const double tau = 0.1 + 0.8 * s;
    const double x = -20.0 * t;
    const double val = ik_sum(k, x, make_params(N, N, tau)).real();
    lo = std::min(lo, val);
    hi = std::max(hi, val);
    if (!(val >= 0.0 && val <= 1.0 + 1e-13)) ++bad;  // rounding allowance
  }
  r.checks.push_back({"0 <= I_k(x) <= 1 (+1e-13 rounding) on 100 random cases with x < 0", static_cast<double>(bad), 0.0, bad == 0,
                      "range [" + fmt(lo) + ", " + fmt(hi) + "]"});
}

// 10. Hermitian and independent limits.
void criterion_limits(CriterionResult& r, const SuiteOptions& o) {
  {
    const EnsembleParams p = make_params(2000, 2000, 1.0);
    const SpectrumSample s = wishart_eigs(p, {o.seed, 0});
    std::vector<double> x;
    double im = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      x.push_back(s.eigenvalues[i].real());
      im = std::max(im, std::abs(s.eigenvalues[i].imag()));
    }
    r.checks.push_back(at_most("tau=1: KS distance of squared Dirac spectrum to MP", ks_distance(x, [](double v) {
                                 return mp_cdf(v, 1.0);
                               }),
                               0.05));
    r.checks.push_back(at_most("tau=1: max |Im|", im, 1e-8));
  }
  {
    const EnsembleParams p = make_params(1000, 0, 0.0);
    const auto samples = sample_trials(p, SampleMethod::wishart, o.seed, 2, o.threads);
    std::vector<double> rad;
    for (const cplx& z : pooled(samples)) rad.push_back(std::abs(z));
    r.checks.push_back(at_most("tau=0, nu=0: KS distance of |z| to the M=2 product law",
                               ks_distance(rad, [](double v) { return product_radial_cdf(v, 2); }), 0.05));
  }
}

// 11. Structure of the Dirac spectrum.
void criterion_structure(CriterionResult& r, const SuiteOptions& o) {
  const EnsembleParams p = make_params(50, 3, 0.5);
  const SeedSpec seed{o.seed, 0};
  const SpectrumSample direct = dirac_eigs_direct(p, seed);
  const SpectrumSample via = dirac_eigs(p, seed);
  const Eigen::VectorXcd& ev = direct.eigenvalues;
  const double scale = ev.cwiseAbs().maxCoeff();
  std::vector<cplx> nonzero;
  int zeros = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= 1e-8 * scale)
      ++zeros;
    else
      nonzero.push_back(ev[i]);
  }
  r.checks.push_back({"zero modes", static_cast<double>(zeros), 3.0, zeros == 3, {}});
  double d = inf;
  if (static_cast<Eigen::Index>(nonzero.size()) == via.eigenvalues.size())
    d = multiset_distance(Eigen::Map<const Eigen::VectorXcd>(nonzero.data(), nonzero.size()), via.eigenvalues);
  r.checks.push_back(at_most("multiset distance to +-sqrt(Wishart)", d, 1e-8));
}

// 12. Berezin mass one.
void criterion_berezin(CriterionResult& r, const SuiteOptions&) {
  const cplx pts[] = {{1.0, 0.0}, {0.0, 0.5}, {0.7, 0.4}};
  double bulk = 0.0, crit = 0.0;
  for (cplx z : pts) {
    bulk = std::max(bulk, std::abs(berezin_mass(z, 1.0, Regime::bulk) - 1.0));
    crit = std::max(crit, std::abs(berezin_mass(z, 1.0, Regime::critical) - 1.0));
  }
  r.checks.push_back(at_most("bulk |mass - 1| at z in {1, 0.5i, 0.7+0.4i}", bulk, 1e-6));
  r.checks.push_back(at_most("critical |mass - 1| at z in {1, 0.5i, 0.7+0.4i}", crit, 1e-4));
}

const char* titles[criterion_count] = {
    "global law of the Wishart spectrum",
    "Dirac droplet splitting",
    "multi-critical local density",
    "limit classification",
    "oracle equivalences",
    "orthogonality",
    "potential-theory identities",
    "Coulomb-gas oracle",
    "special functions",
    "Hermitian and independent limits",
    "Dirac structure",
    "Berezin mass one",
};

}  // namespace

bool CriterionResult::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
  if (id < 1 || id > criterion_count) throw InvalidArgument("run_criterion: id must be in 1..12");
  CriterionResult r;
  r.id = id;
  r.title = titles[id - 1];
  const auto t0 = Clock::now();
  try {
    switch (id) {
      case 1: criterion_global_law(r, opts); break;
      case 2: criterion_split(r, opts); break;
      case 3: criterion_local_critical(r, opts); break;
      case 4: criterion_classification(r, opts); break;
      case 5: criterion_oracles(r, opts); break;
      case 6: criterion_orthogonality(r, opts); break;
      case 7: criterion_potential(r, opts); break;
      case 8: criterion_gas(r, opts); break;
      case 9: criterion_specialfn(r, opts); break;
      case 10: criterion_limits(r, opts); break;
      case 11: criterion_structure(r, opts); break;
      case 12: criterion_berezin(r, opts); break;
    }
  } catch (const std::exception& e) {
    r.checks.push_back({"exception", 0.0, 0.0, false, e.what()});
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "global") return {1, 2, 7, 8, 10};
  if (suite == "local") return {3, 4, 12};
  if (suite == "specialfn") return {9};
  if (suite == "oracle") return {5, 6, 11};
  throw InvalidArgument("unknown suite: " + std::string(suite));
}

std::string suite_json(std::string_view suite, const std::vector<CriterionResult>& results, const SuiteOptions& opts) {
  nlohmann::ordered_json j;
  j["suite"] = std::string(suite);
  j["seed"] = opts.seed;
  bool all = true;
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : results) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["title"] = c.title;
    cj["pass"] = c.pass();
    cj["seconds"] = c.seconds;
    cj["checks"] = nlohmann::ordered_json::array();
    for (const auto& k : c.checks)
      cj["checks"].push_back(
          {{"name", k.name}, {"value", k.value}, {"tolerance", k.tolerance}, {"pass", k.pass}, {"detail", k.detail}});
    all = all && c.pass();
    j["criteria"].push_back(cj);
  }
  j["pass"] = all;
  return j.dump(1);
}

}  // namespace rmx
