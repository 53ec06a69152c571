#include "rmx/globallaw.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "rmx/quadrature.hpp"

namespace rmx {

namespace {

void check_alpha_tau(double alpha, double tau, const char* who) {
  if (!(alpha >= 0.0)) throw InvalidArgument(std::string(who) + ": requires alpha >= 0");
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument(std::string(who) + ": requires tau in [0,1)");
}

struct AB {
  double A, B;
};

AB ab(double tau) {
  const double s = 1.0 - tau * tau;
  return {2.0 / s, 2.0 * tau / s};
}

// sqrt(A^2 |zeta|^2 + alpha^2)
double root_term(double A, double abs2, double alpha) { return std::sqrt(A * A * abs2 + alpha * alpha); }

double q_tilde(cplx zeta, double alpha, double tau) {
  const auto [A, B] = ab(tau);
  const double r = root_term(A, std::norm(zeta), alpha);
  double v = r - B * zeta.real();
  if (alpha != 0.0) v -= alpha * std::log(r + alpha);
  return v;
}

double laplacian_q(cplx zeta, double alpha, double tau) {
  const double A = ab(tau).A;
  const double r = root_term(A, std::norm(zeta), alpha);
  return r == 0.0 ? inf : 0.25 * A * A / r;
}

}  // namespace

double DropletGeometry::ellipse_form(cplx zeta) const {
  const double u = (zeta.real() - x0) / semi_major;
  const double v = zeta.imag() / semi_minor;
  return u * u + v * v;
}

bool DropletGeometry::contains(cplx zeta, double tol) const { return ellipse_form(zeta) <= 1.0 + tol; }

double DropletGeometry::ray_length(cplx p, double phi) const {
  const double c = std::cos(phi), s = std::sin(phi);
  const double a2 = semi_major * semi_major, b2 = semi_minor * semi_minor;
  const double px = p.real() - x0, py = p.imag();
  const double qa = c * c / a2 + s * s / b2;
  const double qb = 2.0 * (px * c / a2 + py * s / b2);
  const double qc = std::min(0.0, px * px / a2 + py * py / b2 - 1.0);
  const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
  const double t = qb <= 0.0 ? (-qb + disc) / (2.0 * qa) : (-2.0 * qc) / (qb + disc);
  return std::max(0.0, t);
}

DropletGeometry droplet_geometry(double alpha, double tau) {
  if (!(alpha >= 0.0)) throw InvalidArgument("droplet_geometry: requires alpha >= 0");
  if (tau == 1.0) throw InvalidArgument("droplet_geometry: tau = 1 has no two-dimensional droplet");
  check_alpha_tau(alpha, tau, "droplet_geometry");
  const double s = std::sqrt(1.0 + alpha);
  DropletGeometry g;
  g.alpha = alpha;
  g.tau = tau;
  g.x0 = tau * (2.0 + alpha);
  g.semi_major = (1.0 + tau * tau) * s;
  g.semi_minor = (1.0 - tau * tau) * s;
  g.conformal_R = s;
  g.quartic_rhs = (1.0 + alpha - tau * tau) * (1.0 - (1.0 + alpha) * tau * tau);
  g.foci = {tau * (s - 1.0) * (s - 1.0), tau * (s + 1.0) * (s + 1.0)};
  return g;
}

double wishart_density(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "wishart_density");
  if (!droplet_geometry(alpha, tau).contains(zeta)) return 0.0;
  const double s = 1.0 - tau * tau;
  const double d = 4.0 * std::norm(zeta) + s * s * alpha * alpha;
  if (d == 0.0) return inf;
  return 1.0 / (s * std::sqrt(d));
}

double quartic_residual(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "quartic_residual");
  const double x2 = zeta.real() * zeta.real(), y2 = zeta.imag() * zeta.imag();
  const double s = 1.0 - tau * tau;
  const double rhs = (1.0 + alpha - tau * tau) * (1.0 - (1.0 + alpha) * tau * tau);
  return (x2 + y2) * (x2 + y2) + 16.0 * tau * tau / (s * s) * x2 * y2 - 2.0 * tau * (2.0 + alpha) * (x2 - y2) - rhs;
}

DiracLaw dirac_law(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "dirac_law");
  DiracLaw out;
  out.atom_mass = alpha / (2.0 + alpha);
  // zeta is in the quartic region iff zeta^2 lies in the ellipse
  if (!droplet_geometry(alpha, tau).contains(zeta * zeta)) return out;
  const double s = 1.0 - tau * tau;
  const double r2 = std::norm(zeta);
  const double den = std::sqrt(r2 * r2 + alpha * alpha * s * s / 4.0);
  if (den == 0.0) {
    out.density = 2.0 / ((2.0 + alpha) * s);  // alpha = 0, zeta = 0: flat value
    return out;
  }
  out.density = 2.0 / (2.0 + alpha) / s * r2 / den;
  return out;
}

double classical_density(ClassicalLaw kind, cplx point, double param) {
  switch (kind) {
    case ClassicalLaw::mp:
    case ClassicalLaw::mp_squared: {
      if (!(param >= 0.0)) throw InvalidArgument("classical_density: Marchenko-Pastur requires alpha >= 0");
      const double s = std::sqrt(1.0 + param);
      const double lm = (s - 1.0) * (s - 1.0), lp = (s + 1.0) * (s + 1.0);
      const double x = point.real();
      const double v = kind == ClassicalLaw::mp ? x : x * x;
      if (v < lm || v > lp) return 0.0;
      if (v == 0.0) return inf;
      const double root = std::sqrt((lp - v) * (v - lm));
      return kind == ClassicalLaw::mp ? root / (2.0 * pi * x) : root / (pi * std::abs(x));
    }
    case ClassicalLaw::product_M: {
      if (!(param >= 1.0) || std::floor(param) != param)
        throw InvalidArgument("classical_density: product law requires an integer M >= 1");
      const double r = std::abs(point);
      if (r > 1.0) return 0.0;
      const double e = 2.0 - 2.0 / param;
      if (r == 0.0) return e > 0.0 ? inf : 1.0 / param;
      return 1.0 / (param * std::pow(r, e));
    }
  }
  throw InvalidArgument("classical_density: unknown kind");
}

EdgePoints edge_points(double alpha, double tau) {
  if (!(alpha >= 0.0) || !(tau >= 0.0 && tau <= 1.0))
    throw InvalidArgument("edge_points: requires alpha >= 0 and tau in [0,1]");
  const double s = std::sqrt(1.0 + alpha);
  EdgePoints e;
  e.outer = std::sqrt((1.0 + tau * s) * (s + tau));
  const double t = tau * s - 1.0;
  if (std::abs(t) <= 4.0 * std::numeric_limits<double>::epsilon())
    e.inner = 0.0;
  else if (t > 0.0)
    e.inner = std::sqrt(t * (s - tau));
  return e;
}

double potential(cplx zeta, double alpha, double tau, PotentialVariant variant, std::optional<int> N) {
  check_alpha_tau(alpha, tau, "potential");
  const auto [A, B] = ab(tau);
  switch (variant) {
    case PotentialVariant::Q_tilde:
      return q_tilde(zeta, alpha, tau);
    case PotentialVariant::V_tilde: {
      double v = q_tilde(zeta * zeta, alpha, tau);
      if (N) {
        if (zeta == cplx(0.0, 0.0)) return inf;
        v -= 2.0 / *N * std::log(std::abs(zeta));
      }
      return v;
    }
    case PotentialVariant::Q_tilde_0:
      return A * std::abs(zeta) - B * zeta.real();
    case PotentialVariant::laplacian_Q:
      return laplacian_q(zeta, alpha, tau);
    case PotentialVariant::laplacian_V: {
      if (alpha == 0.0) return A;
      const double r2 = std::norm(zeta);
      return A * A * r2 / root_term(A, r2 * r2, alpha);
    }
  }
  throw InvalidArgument("potential: unknown variant");
}

double potential(cplx zeta, const EnsembleParams& params, PotentialVariant variant, bool with_log_term) {
  return potential(zeta, params.alpha_N, params.tau, variant,
                   with_log_term ? std::optional<int>(params.N) : std::nullopt);
}

cplx potential_gradient(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "potential_gradient");
  const auto [A, B] = ab(tau);
  const double den = root_term(A, std::norm(zeta), alpha) + alpha;
  if (den == 0.0) return -B;
  return A * A * zeta / den - B;
}

cplx conformal_map(cplx z, const DropletGeometry& g, double tau) {
  if (z == cplx(0.0, 0.0)) throw InvalidArgument("conformal_map: z must be nonzero");
  return g.conformal_R * (z + tau * tau / z) + g.x0;
}

cplx cauchy_transform_interior(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "cauchy_transform");
  const auto [A, B] = ab(tau);
  const double r = root_term(A, std::norm(zeta), alpha);
  if (r + alpha == 0.0) throw InvalidArgument("cauchy_transform: zeta must be nonzero");
  // (r - alpha)/(2 zeta) written without cancellation
  return A * A * std::conj(zeta) / (2.0 * (r + alpha)) - B / 2.0;
}

cplx cauchy_transform_exterior(cplx zeta, double alpha, double tau) {
  check_alpha_tau(alpha, tau, "cauchy_transform");
  if (zeta == cplx(0.0, 0.0)) throw InvalidArgument("cauchy_transform: zeta must be nonzero");
  const double R = std::sqrt(1.0 + alpha);
  const double x0 = tau * (2.0 + alpha);
  const cplx u = zeta - x0;
  const double c = 2.0 * R * tau;
  const cplx w = std::sqrt(1.0 - (c / u) * (c / u));
  // (zeta - sqrt((zeta-x0)^2 - c^2)) / tau, rationalized so tau -> 0 is finite
  const cplx q = (2.0 + alpha) + 4.0 * R * R * tau / (u * (1.0 + w));
  return (q - alpha) / (2.0 * zeta);
}

cplx cauchy_transform(cplx zeta, double alpha, double tau) {
  if (zeta == cplx(0.0, 0.0)) throw InvalidArgument("cauchy_transform: zeta must be nonzero");
  if (droplet_geometry(alpha, tau).contains(zeta)) return cauchy_transform_interior(zeta, alpha, tau);
  return cauchy_transform_exterior(zeta, alpha, tau);
}

cplx schwarz_function(cplx zeta, double alpha, double tau) {
  const auto [A, B] = ab(tau);
  const cplx C = cauchy_transform_interior(zeta, alpha, tau);
  return zeta / (A * A) * (2.0 * C + B) * (2.0 * C + B + 2.0 * alpha / zeta);
}

double integrate_droplet(const std::function<double(cplx)>& f, const DropletGeometry& g, cplx center, double tol,
                         bool log_center, std::optional<cplx> log_point) {
  if (!g.contains(center, 1e-9)) throw InvalidArgument("integrate_droplet: center must lie in the droplet");
  const double inner_tol = tol / 40.0;
  double t_break = -1.0, phi_break = 0.0;
  if (log_point && *log_point != center) {
    t_break = std::abs(*log_point - center);
    phi_break = std::arg(*log_point - center);
    if (phi_break < 0.0) phi_break += 2.0 * pi;
  }
  auto ray = [&](double phi) {
    const double T = g.ray_length(center, phi);
    if (T <= 0.0) return 0.0;
    const cplx dir = std::polar(1.0, phi);
    if (log_center) {
      auto h = [&](double s) { return f(center + T * s * s * dir) * 2.0 * T * T * s * s * s; };
      return integrate_or_throw(h, 0.0, 1.0, inner_tol, "integrate_droplet");
    }
    auto h = [&](double t) { return f(center + t * dir) * t; };
    if (t_break > 0.0 && t_break < T)
      return integrate_or_throw(h, 0.0, t_break, inner_tol, "integrate_droplet") +
             integrate_or_throw(h, t_break, T, inner_tol, "integrate_droplet");
    return integrate_or_throw(h, 0.0, T, inner_tol, "integrate_droplet");
  };
  if (t_break > 0.0)
    return (integrate_or_throw(ray, 0.0, phi_break, tol / 4.0, "integrate_droplet") +
            integrate_or_throw(ray, phi_break, 2.0 * pi, tol / 4.0, "integrate_droplet")) /
           pi;
  return integrate_or_throw(ray, 0.0, 2.0 * pi, tol / 2.0, "integrate_droplet") / pi;
}

double mass_integral(double alpha, double tau, double tol) {
  check_alpha_tau(alpha, tau, "mass_integral");
  if (!(tol >= 1e-10)) throw InvalidArgument("mass_integral: tol must be >= 1e-10");
  const DropletGeometry g = droplet_geometry(alpha, tau);
  const cplx center = g.contains(0.0) ? cplx(0.0) : cplx(g.x0);
  return integrate_droplet([&](cplx z) { return laplacian_q(z, alpha, tau); }, g, center, tol / 10.0);
}

double effective_potential(cplx zeta, double alpha, double tau, double tol) {
  check_alpha_tau(alpha, tau, "effective_potential");
  const DropletGeometry g = droplet_geometry(alpha, tau);
  const bool inside = g.contains(zeta);
  // For alpha = 0 the density is singular like 1/|z| at the origin, so polar
  // coordinates about 0 absorb it and the log point becomes a breakpoint.
  const cplx center = alpha == 0.0 ? cplx(0.0) : (inside ? zeta : cplx(g.x0));
  const bool log_center = alpha != 0.0 && inside;
  auto f = [&](cplx z) {
    const double d = std::abs(zeta - z);
    if (d == 0.0) return 0.0;
    return -std::log(d) * laplacian_q(z, alpha, tau);
  };
  return integrate_droplet(f, g, center, tol / 10.0, log_center, inside ? std::optional<cplx>(zeta) : std::nullopt) + 0.5 * q_tilde(zeta, alpha, tau);
}

}  // namespace rmx
