#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "rmx/core.hpp"

namespace rmx {

// All densities are per dA = d^2 zeta / pi.

struct DropletGeometry {
  double x0 = 0;
  double semi_major = 1;
  double semi_minor = 1;
  double conformal_R = 1;
  double quartic_rhs = 1;
  std::pair<double, double> foci{0, 0};
  double alpha = 0;
  double tau = 0;

  // ((x-x0)/a)^2 + (y/b)^2
  double ellipse_form(cplx zeta) const;
  // Closed droplet, 1e-12 absolute tolerance on the ellipse form.
  bool contains(cplx zeta, double tol = 1e-12) const;
  // Distance from p (inside the closed ellipse) to the boundary along direction phi.
  double ray_length(cplx p, double phi) const;
};

DropletGeometry droplet_geometry(double alpha, double tau);

double wishart_density(cplx zeta, double alpha, double tau);

struct DiracLaw {
  double atom_mass = 0;
  double density = 0;
};
DiracLaw dirac_law(cplx zeta, double alpha, double tau);

double quartic_residual(cplx zeta, double alpha, double tau);

enum class ClassicalLaw { mp, mp_squared, product_M };
// mp, mp_squared: param = alpha, density per dx on the real line (point.imag() ignored).
// product_M: param = M, density per dA on the unit disc.
double classical_density(ClassicalLaw kind, cplx point, double param);

struct EdgePoints {
  double outer = 0;                // edges at +-outer
  std::optional<double> inner;     // +-inner when tau >= tau_c
};
EdgePoints edge_points(double alpha, double tau);

enum class PotentialVariant { Q_tilde, V_tilde, Q_tilde_0, laplacian_Q, laplacian_V };
// V_tilde includes -(2/N) log|zeta| only when N is given.
double potential(cplx zeta, double alpha, double tau, PotentialVariant variant, std::optional<int> N = {});
double potential(cplx zeta, const EnsembleParams& params, PotentialVariant variant, bool with_log_term = false);

// Gradient d/dx + i d/dy of Q_tilde.
cplx potential_gradient(cplx zeta, double alpha, double tau);

cplx conformal_map(cplx z, const DropletGeometry& geometry, double tau);

cplx cauchy_transform(cplx zeta, double alpha, double tau);
cplx cauchy_transform_interior(cplx zeta, double alpha, double tau);
cplx cauchy_transform_exterior(cplx zeta, double alpha, double tau);
// F(zeta) = (zeta/A^2)(2C+B)(2C+B+2 alpha/zeta) with the interior C.
cplx schwarz_function(cplx zeta, double alpha, double tau);

// (1/pi) int over the ellipse of f, in polar coordinates about `center`
// (which must lie in the closed ellipse). With log_center the radial
// variable is squared so log|z-center| singularities integrate cleanly.
// A log_point away from the center is used as a breakpoint in both polar
// variables.
double integrate_droplet(const std::function<double(cplx)>& f, const DropletGeometry& g, cplx center, double tol,
                         bool log_center = false, std::optional<cplx> log_point = std::nullopt);

double mass_integral(double alpha, double tau, double tol);
double effective_potential(cplx zeta, double alpha, double tau, double tol);

}  // namespace rmx
