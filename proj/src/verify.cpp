#include "rmx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "rmx/io.hpp"
#include "rmx/parallel.hpp"
#include "rmx/quadrature.hpp"
#include "rmx/specialfn.hpp"

namespace rmx {

Eigen::ArrayXXd Histogram2D::density_per_dA() const {
  if (!(total > 0)) return Eigen::ArrayXXd::Zero(counts.rows(), counts.cols());
  return counts / (total * grid.cell_area_dA());
}

Histogram2D histogram2d(const std::vector<cplx>& points, const Grid2D& grid) {
  grid.validate();
  Histogram2D h;
  h.grid = grid;
  h.counts = Eigen::ArrayXXd::Zero(grid.nx, grid.ny);
  for (const cplx& z : points) {
    int i = 0, j = 0;
    if (grid.locate(z, i, j)) h.counts(i, j) += 1.0;
  }
  h.total = static_cast<double>(points.size());
  return h;
}

double cell_average(const std::function<double(cplx)>& law, const Grid2D& grid, int i, int j) {
  static const double x3[3] = {-0.774596669241483377035853079956480, 0.0, 0.774596669241483377035853079956480};
  static const double w3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  // composite rule: the laws jump to 0 at the droplet edge, so a single
  // Gauss rule on a cut cell is off by O(1)
  constexpr int sub = 12;
  const double x0 = grid.x_min + i * grid.dx(), y0 = grid.y_min + j * grid.dy();
  const double hx = 0.5 * grid.dx() / sub, hy = 0.5 * grid.dy() / sub;
  double s = 0.0;
  for (int p = 0; p < sub; ++p)
    for (int q = 0; q < sub; ++q) {
      const cplx c(x0 + (2 * p + 1) * hx, y0 + (2 * q + 1) * hy);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += w3[a] * w3[b] * law(c + cplx(hx * x3[a], hy * x3[b]));
    }
  return s / (4.0 * sub * sub);
}

Histogram2D expected_histogram(const std::function<double(cplx)>& law, const Grid2D& grid, double total) {
  grid.validate();
  Histogram2D h;
  h.grid = grid;
  h.counts = Eigen::ArrayXXd::Zero(grid.nx, grid.ny);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) h.counts(i, j) = total * cell_average(law, grid, i, j) * grid.cell_area_dA();
  h.total = total;
  return h;
}

double inside_fraction(const std::vector<cplx>& points, const DropletGeometry& droplet, double dilation) {
  if (points.empty()) return 1.0;
  std::size_t in = 0;
  for (const cplx& z : points)
    if (droplet.ellipse_form(z) <= dilation * dilation) ++in;
  return static_cast<double>(in) / static_cast<double>(points.size());
}

ComparisonReport density_distance(const Histogram2D& hist, const std::function<double(cplx)>& law,
                                  const DistanceOptions& opts) {
  if (!(hist.total > 0)) throw InvalidArgument("density_distance: empty histogram");
  const Grid2D& g = hist.grid;
  const Eigen::ArrayXXd emp = hist.density_per_dA();
  const double area = g.cell_area_dA();
  ComparisonReport r;
  r.n_samples = static_cast<long long>(hist.total);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double ana = cell_average(law, g, i, j);
      const double d = std::abs(emp(i, j) - ana);
      r.l1_distance += d * area;
      if (ana * area * hist.total >= opts.min_expected) r.sup_distance = std::max(r.sup_distance, d);
    }
  if (opts.points && opts.droplet) r.inside_fraction = inside_fraction(*opts.points, *opts.droplet, opts.dilation);
  return r;
}

namespace {

// Integral over the u-plane (dA units) of f(x, y), Gaussian in x about the
// given centers and at most algebraically decaying in y about y0.
double plane_integral(const std::function<double(double, double)>& f, double x_lo, double x_hi, double y0,
                      double tol) {
  auto row = [&](double x) {
    auto g = [&](double s) {
      const double d = 1.0 - s * s;
      const double y = y0 + s / d;
      return f(x, y) * (1.0 + s * s) / (d * d);
    };
    return integrate_or_throw(g, -1.0, 1.0, tol / 20.0, "berezin_mass");
  };
  return integrate_or_throw(row, x_lo, x_hi, tol / 2.0, "berezin_mass") / pi;
}

}  // namespace

double berezin_mass(cplx z, double alpha, Regime regime, double tol) {
  if (!(alpha > 0.0)) throw InvalidArgument("berezin_mass: requires alpha > 0");
  if (regime == Regime::gapped) throw InvalidArgument("berezin_mass: gapped regime has a vanishing kernel");
  if (z == cplx(0.0, 0.0)) throw InvalidArgument("berezin_mass: K(z,z) = 0 at z = 0");
  // With u = w^2 the w-integral of an even function is int f(sqrt u) / (2|u|) dA(u).
  const cplx v = z * z;
  const double xv = v.real(), yv = v.imag();
  const double span = 7.0;
  if (regime == Regime::bulk) {
    // |K|^2/K(z,z) = 2|w|^2 exp(-|z^2 - w^2|^2)
    auto f = [&](double x, double y) { return std::exp(-std::norm(v - cplx(x, y))); };
    return plane_integral(f, xv - span, xv + span, yv, tol);
  }
  const double denom = 2.0 * std::real(erfc_complex(-std::sqrt(2.0) * xv));
  // |erfc(-s)|^2 e^{-|v-u|^2}, s = (v + conj u)/sqrt 2, with the Gaussian
  // factors combined so that nothing overflows.
  auto f = [&](double x, double y) {
    const cplx u(x, y);
    const cplx s = (v + std::conj(u)) / std::sqrt(2.0);
    const double half = 0.5 * std::norm(v - u);
    const cplx e = std::exp(cplx(-xv * xv - x * x, -(s * s).imag()));
    cplx t;
    if (s.real() <= 0.0)
      t = e * faddeeva_w(cplx(0.0, -1.0) * s);
    else
      t = 2.0 * std::exp(-half) - e * faddeeva_w(cplx(0.0, 1.0) * s);
    return std::norm(t) / denom;
  };
  const double xr = std::abs(xv) + span;
  return plane_integral(f, -xr, xr, yv, tol);
}

Eigen::MatrixXcd orthogonality_matrix(const EnsembleParams& p, int jmax, double tol) {
  require_open_tau(p, "orthogonality_matrix");
  if (jmax < 0 || jmax >= p.N) throw InvalidArgument("orthogonality_matrix: requires 0 <= jmax < N");
  const double A = p.A_or_throw(), B = p.B_or_throw(), c = p.c_or_throw();
  const double N = p.N, nu = p.nu;
  const int m = jmax + 1;
  // u = zeta^2: weight (1/2) K_nu(AN|u|) |u|^nu e^{NB Re u}; polar u = rho e^{i theta}.
  const int n_theta = std::max(256, 2 * static_cast<int>(std::ceil(N * B * 8.0)) + 64);
  const double decay = (A - B) * N;
  const double rho_max = (60.0 + nu * std::log(1.0 + nu)) / decay + 1.0;
  auto entry = [&](int j, int k, bool imag) {
    auto radial = [&](double rho) {
      if (rho == 0.0) return 0.0;
      const double lw = log_bessel_k(std::abs(nu), A * N * rho) + nu * std::log(rho);
      double s = 0.0;
      for (int t = 0; t < n_theta; ++t) {
        const double th = 2.0 * pi * t / n_theta;
        const cplx u = std::polar(rho, th);
        const auto L = laguerre_sequence(std::max(j, k) + 1, nu, c * u);
        const cplx v = (L[j] * L[k].conj() * ScaledComplex::from_log(lw + N * B * u.real())).to_complex();
        s += imag ? v.imag() : v.real();
      }
      // (1/pi) int rho d rho d theta, trapezoid mean times 2 pi, weight 1/2
      return s / n_theta * 2.0 * pi * rho * 0.5 / pi;
    };
    return integrate_or_throw(radial, 0.0, rho_max, tol, "orthogonality_matrix");
  };
  Eigen::MatrixXcd G(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k) {
      G(j, k) = cplx(entry(j, k, false), j == k ? 0.0 : entry(j, k, true));
      G(k, j) = std::conj(G(j, k));
    }
  return G;
}

double limit_density(cplx z, double alpha, Regime regime) { return limit_kernel(z, z, alpha, regime).real(); }

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& Ns, double alpha, TauRule rule, double tau,
                                              const std::vector<cplx>& zs, int threads) {
  if (!(alpha > 0.0)) throw InvalidArgument("convergence_table: requires alpha > 0");
  std::vector<ConvergenceRow> rows(Ns.size() * zs.size());
  for (std::size_t a = 0; a < Ns.size(); ++a) {
    const int N = Ns[a];
    const double t = rule == TauRule::critical ? 1.0 / std::sqrt(1.0 + alpha) : tau;
    const Regime regime = classify_regime(alpha, t);
    parallel_for(static_cast<int>(zs.size()), threads, [&](int b) {
      ConvergenceRow& r = rows[a * zs.size() + b];
      r.N = N;
      r.z = zs[b];
      try {
        const EnsembleParams p = make_params(N, alpha * N, t);
        r.finite_N = rescaled_density(zs[b], p);
        r.limit = limit_density(zs[b], alpha, regime);
        r.abs_err = std::abs(r.finite_N - r.limit);
      } catch (const std::exception& e) {
        r.error = e.what();
        r.finite_N = r.limit = r.abs_err = std::nan("");
      }
    });
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "N,re,im,finite_N,limit,abs_err\n";
  for (const auto& r : rows)
    out << r.N << ',' << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ','
        << format_double(r.finite_N) << ',' << format_double(r.limit) << ',' << format_double(r.abs_err) << '\n';
}

double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw InvalidArgument("ks_distance: empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double F = cdf(x[i]);
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

double mp_cdf(double x, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("mp_cdf: requires alpha >= 0");
  const double s = std::sqrt(1.0 + alpha);
  const double lm = (s - 1.0) * (s - 1.0), lp = (s + 1.0) * (s + 1.0);
  if (x <= lm) return 0.0;
  if (x >= lp) return 1.0;
  // x = c - h cos t turns the square-root edges into a smooth integrand.
  const double c = 0.5 * (lp + lm), h = 0.5 * (lp - lm);
  const double t_end = std::acos(std::clamp((c - x) / h, -1.0, 1.0));
  auto f = [&](double t) {
    const double st = std::sin(t);
    return h * h * st * st / (2.0 * pi * (c - h * std::cos(t)));
  };
  auto f0 = [&](double t) { return h * (1.0 + std::cos(t)) / (2.0 * pi); };  // lm = 0
  return lm == 0.0 ? integrate_or_throw(f0, 0.0, t_end, 1e-13, "mp_cdf")
                   : integrate_or_throw(f, 0.0, t_end, 1e-13, "mp_cdf");
}

double product_radial_cdf(double r, int M) {
  if (M < 1) throw InvalidArgument("product_radial_cdf: requires M >= 1");
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return std::pow(r, 2.0 / M);
}

double droplet_radial_cdf(double rho, double alpha, double tau, double tol) {
  if (rho <= 0.0) return 0.0;
  if (rho >= 1.0) return 1.0;
  const DropletGeometry g = droplet_geometry(alpha, tau);
  const double a = g.semi_major * rho, b = g.semi_minor * rho;
  auto ray = [&](double phi) {
    const double cp = std::cos(phi), sp = std::sin(phi);
    auto h = [&](double s) { return wishart_density(cplx(g.x0 + a * s * cp, b * s * sp), alpha, tau) * a * b * s; };
    return integrate_or_throw(h, 0.0, 1.0, tol / 40.0, "droplet_radial_cdf");
  };
  return integrate_or_throw(ray, 0.0, 2.0 * pi, tol / 2.0, "droplet_radial_cdf") / pi;
}

std::string report_json(const ComparisonReport& r) {
  nlohmann::ordered_json j;
  j["l1_distance"] = r.l1_distance;
  j["sup_distance"] = r.sup_distance;
  j["inside_fraction"] = r.inside_fraction;
  j["n_samples"] = r.n_samples;
  j["params"] = r.params_snapshot ? nlohmann::ordered_json::parse(to_json(*r.params_snapshot)) : nullptr;
  return j.dump(1);
}

}  // namespace rmx
