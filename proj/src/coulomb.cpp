#include "rmx/coulomb.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "rmx/io.hpp"
#include "rmx/parallel.hpp"
#include "rmx/random.hpp"

namespace rmx {

namespace {

constexpr double coincidence_tol = 1e-12;

struct Field {
  double A, B, alpha;
};

Field field(double alpha, double tau) {
  if (!(alpha >= 0.0)) throw InvalidArgument("gas: requires alpha >= 0");
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("gas: requires tau in [0,1)");
  const double s = 1.0 - tau * tau;
  return {2.0 / s, 2.0 * tau / s, alpha};
}

double root_term(const Field& f, cplx z) { return std::sqrt(f.A * f.A * std::norm(z) + f.alpha * f.alpha); }

double q_value(const Field& f, cplx z) {
  const double r = root_term(f, z);
  double v = r - f.B * z.real();
  if (f.alpha != 0.0) v -= f.alpha * std::log(r + f.alpha);
  return v;
}

cplx q_gradient(const Field& f, cplx z) {
  const double den = root_term(f, z) + f.alpha;
  if (den == 0.0) return -f.B;
  return f.A * f.A * z / den - f.B;
}

// Q(z0 + dz) - Q(z0) without forming either value.
double q_difference(const Field& f, cplx z0, cplx dz) {
  const double r0 = root_term(f, z0), r1 = root_term(f, z0 + dz);
  const double dr2 = f.A * f.A * (dz * std::conj(2.0 * z0 + dz)).real();
  const double dr = r0 + r1 > 0.0 ? dr2 / (r0 + r1) : 0.0;
  double v = dr - f.B * dz.real();
  if (f.alpha != 0.0) v -= f.alpha * std::log1p(dr / (r0 + f.alpha));
  return v;
}

void check_distinct(const Eigen::VectorXcd& z) {
  for (Eigen::Index j = 0; j < z.size(); ++j)
    for (Eigen::Index k = j + 1; k < z.size(); ++k)
      if (std::abs(z[j] - z[k]) <= coincidence_tol) throw CoincidentPoints(static_cast<int>(j), static_cast<int>(k));
}

double min_separation(const Eigen::VectorXcd& z) {
  double m = inf;
  for (Eigen::Index j = 0; j < z.size(); ++j)
    for (Eigen::Index k = j + 1; k < z.size(); ++k) m = std::min(m, std::abs(z[j] - z[k]));
  return m;
}

double real_dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return a.dot(b).real(); }

}  // namespace

CoincidentPoints::CoincidentPoints(int i, int j)
    : InvalidArgument("gas: points " + std::to_string(i) + " and " + std::to_string(j) + " coincide"), i_(i), j_(j) {}

GasConfig::GasConfig(Eigen::VectorXcd points, double alpha, double tau)
    : points_(std::move(points)), alpha_(alpha), tau_(tau) {
  field(alpha, tau);
}

void GasConfig::set_points(Eigen::VectorXcd points) {
  points_ = std::move(points);
  energy_.reset();
  grad_norm = inf;
}

double GasConfig::energy(int threads) const {
  if (!energy_) energy_ = gas_energy(*this, threads);
  return *energy_;
}

double gas_energy(const GasConfig& config, int threads) {
  const Field f = field(config.alpha(), config.tau());
  const Eigen::VectorXcd& z = config.points();
  check_distinct(z);
  const int n = config.size();
  std::vector<double> rows(n);
  parallel_for(n, threads, [&](int j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != j) s -= std::log(std::abs(z[j] - z[k]));
    rows[j] = s + n * q_value(f, z[j]);
  });
  double e = 0.0;
  for (double r : rows) e += r;
  return e;
}

Eigen::VectorXcd gas_gradient(const GasConfig& config, int threads) {
  const Field f = field(config.alpha(), config.tau());
  const Eigen::VectorXcd& z = config.points();
  check_distinct(z);
  const int n = config.size();
  Eigen::VectorXcd g(n);
  parallel_for(n, threads, [&](int j) {
    cplx s = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != j) {
        const cplx d = z[j] - z[k];
        s -= d / std::norm(d);
      }
    g[j] = 2.0 * s + static_cast<double>(n) * q_gradient(f, z[j]);
  });
  return g;
}

double energy_difference(const GasConfig& config, const Eigen::VectorXcd& shift, int threads) {
  const Field f = field(config.alpha(), config.tau());
  const Eigen::VectorXcd& z = config.points();
  if (shift.size() != z.size()) throw InvalidArgument("energy_difference: size mismatch");
  check_distinct(z + shift);
  const int n = config.size();
  std::vector<double> rows(n);
  parallel_for(n, threads, [&](int j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const cplx d0 = z[j] - z[k], dd = shift[j] - shift[k];
      // log|d0| - log|d0 + dd| = -0.5 log(|d0 + dd|^2/|d0|^2)
      s -= 0.5 * std::log1p((dd * std::conj(2.0 * d0 + dd)).real() / std::norm(d0));
    }
    rows[j] = s + n * q_difference(f, z[j], shift[j]);
  });
  double e = 0.0;
  for (double r : rows) e += r;
  return e;
}

MinimizeResult gas_minimize(const GasConfig& initial, const MinimizeOptions& opts) {
  if (opts.max_iters < 0 || !(opts.grad_tol > 0.0) || !(opts.min_sep > 0.0))
    throw InvalidArgument("gas_minimize: invalid options");
  MinimizeResult res{initial, MinimizeStatus::max_iters, {}};
  GasConfig& cfg = res.config;
  const int th = opts.threads;

  Eigen::VectorXcd g = gas_gradient(cfg, th);
  double gnorm = g.norm();
  cfg.grad_norm = gnorm;
  double energy = cfg.energy(th);
  res.log.push_back({0, energy, gnorm, 0.0});

  // first trial moves the fastest point by a tenth of the closest spacing (of unit length for one point)
  const double spacing = cfg.size() > 1 ? min_separation(cfg.points()) : 1.0;
  double step = gnorm > 0.0 ? 0.1 * spacing / g.cwiseAbs().maxCoeff() : 0.0;
  Eigen::VectorXcd prev_x, prev_g;
  for (int it = 1; it <= opts.max_iters; ++it) {
    if (gnorm <= opts.grad_tol) {
      res.status = MinimizeStatus::converged;
      return res;
    }
    if (prev_x.size() > 0) {
      const Eigen::VectorXcd s = cfg.points() - prev_x, y = g - prev_g;
      const double sy = real_dot(s, y);
      if (sy > 0.0) step = s.squaredNorm() / sy;
      else step *= 2.0;
    }
    const double g2 = gnorm * gnorm;
    bool accepted = false;
    for (int halving = 0; halving < 80; ++halving, step *= 0.5) {
      const Eigen::VectorXcd shift = -step * g;
      const Eigen::VectorXcd trial = cfg.points() + shift;
      if (min_separation(trial) < opts.min_sep) continue;
      const double de = energy_difference(cfg, shift, th);
      if (de <= -opts.armijo_c * step * g2) {
        prev_x = cfg.points();
        prev_g = g;
        energy += de;
        cfg.set_points(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.status = MinimizeStatus::stagnated;
      return res;
    }
    g = gas_gradient(cfg, th);
    gnorm = g.norm();
    cfg.grad_norm = gnorm;
    res.log.push_back({it, energy, gnorm, step});
  }
  if (gnorm <= opts.grad_tol) res.status = MinimizeStatus::converged;
  return res;
}

GasConfig uniform_box_config(int n, double alpha, double tau, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("uniform_box_config: requires n >= 1");
  const DropletGeometry geo = droplet_geometry(alpha, tau);
  const CounterNormal rng(SeedSpec{seed, 0});
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) {
    const auto [u, v] = rng.uniform_pair(0, static_cast<std::uint64_t>(j));
    z[j] = {geo.x0 + geo.semi_major * (2.0 * u - 1.0), geo.semi_minor * (2.0 * v - 1.0)};
  }
  return GasConfig(std::move(z), alpha, tau);
}

double mean_nearest_neighbor(const Eigen::VectorXcd& z) {
  if (z.size() < 2) throw InvalidArgument("mean_nearest_neighbor: requires two points");
  double total = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    double m = inf;
    for (Eigen::Index k = 0; k < z.size(); ++k)
      if (k != j) m = std::min(m, std::abs(z[j] - z[k]));
    total += m;
  }
  return total / static_cast<double>(z.size());
}

Coverage coverage_metric(const GasConfig& config, const DropletGeometry& geo, double dilation, int samples) {
  const Eigen::VectorXcd& z = config.points();
  Coverage c;
  if (z.size() == 0) return c;
  int inside = 0;
  for (Eigen::Index j = 0; j < z.size(); ++j)
    if (geo.ellipse_form(z[j]) <= dilation * dilation) ++inside;
  c.inside_fraction = static_cast<double>(inside) / static_cast<double>(z.size());
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * pi * i / samples;
    const cplx b(geo.x0 + geo.semi_major * std::cos(t), geo.semi_minor * std::sin(t));
    c.hausdorff_proxy = std::max(c.hausdorff_proxy, (z.array() - b).abs().minCoeff());
  }
  return c;
}

void write_gas_csv(std::ostream& out, const GasConfig& config) {
  out << "re,im\n";
  for (Eigen::Index j = 0; j < config.points().size(); ++j)
    out << format_double(config.points()[j].real()) << ',' << format_double(config.points()[j].imag()) << '\n';
}

std::string minimize_log_json(const MinimizeResult& result) {
  nlohmann::ordered_json j;
  const char* status = result.status == MinimizeStatus::converged   ? "converged"
                       : result.status == MinimizeStatus::stagnated ? "stagnated"
                                                                     : "max_iters";
  j["status"] = status;
  j["log"] = nlohmann::ordered_json::array();
  for (const auto& s : result.log)
    j["log"].push_back({{"iter", s.iter}, {"energy", s.energy}, {"grad_norm", s.grad_norm}, {"step", s.step}});
  return j.dump(1);
}

}  // namespace rmx
