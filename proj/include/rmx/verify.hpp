#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rmx/core.hpp"
#include "rmx/globallaw.hpp"
#include "rmx/kernels.hpp"

namespace rmx {

struct Histogram2D {
  Grid2D grid;
  Eigen::ArrayXXd counts;  // nx x ny; integral unless built from expectations
  double total = 0;        // includes points that fell outside the grid

  // counts / (total * cell area in dA units)
  Eigen::ArrayXXd density_per_dA() const;
};

Histogram2D histogram2d(const std::vector<cplx>& points, const Grid2D& grid);
// Counts replaced by total * (law integrated over each cell, dA units).
Histogram2D expected_histogram(const std::function<double(cplx)>& law, const Grid2D& grid, double total);
// Average of law over cell (i, j): 3x3 Gauss-Legendre on a 12x12 split of the cell.
double cell_average(const std::function<double(cplx)>& law, const Grid2D& grid, int i, int j);

struct ComparisonReport {
  double l1_distance = 0;
  double sup_distance = 0;
  double inside_fraction = 1;
  long long n_samples = 0;
  std::optional<EnsembleParams> params_snapshot;
};

struct DistanceOptions {
  double min_expected = 20;              // sup only over cells with this many expected counts
  const std::vector<cplx>* points = nullptr;  // for inside_fraction
  std::optional<DropletGeometry> droplet;
  double dilation = 1.05;
};

ComparisonReport density_distance(const Histogram2D& hist, const std::function<double(cplx)>& law,
                                  const DistanceOptions& opts = {});

// Inside-fraction of points against the ellipse form <= dilation^2.
double inside_fraction(const std::vector<cplx>& points, const DropletGeometry& droplet, double dilation);

// int |K(z,w)|^2 / K(z,z) dA(w) for the limiting Dirac kernel.
double berezin_mass(cplx z, double alpha, Regime regime, double tol = 1e-11);

// G[j][k] = int L_j(c zeta^2) conj(L_k(c zeta^2)) e^{-N V_N(zeta)} dA(zeta), j,k <= jmax.
// The exact value is (h_j / 2) delta_jk.
Eigen::MatrixXcd orthogonality_matrix(const EnsembleParams& params, int jmax, double tol = 1e-13);

enum class TauRule { fixed, critical };

struct ConvergenceRow {
  int N = 0;
  cplx z;
  double finite_N = 0;
  double limit = 0;
  double abs_err = 0;
  std::string error;  // non-empty when the row failed
};

// nu = alpha N along the family; tau fixed or tau_c.
std::vector<ConvergenceRow> convergence_table(const std::vector<int>& Ns, double alpha, TauRule rule, double tau,
                                              const std::vector<cplx>& zs, int threads = 1);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

// Limiting one-point function of the rescaled Dirac spectrum.
double limit_density(cplx z, double alpha, Regime regime);

// Kolmogorov distance between the sample (any order) and a continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// Marchenko-Pastur CDF for the law classical_density(mp, ., alpha).
double mp_cdf(double x, double alpha);
// Radial CDF of the product law on the unit disc: r^{2/M}.
double product_radial_cdf(double r, int M);
// Mass of the droplet law inside the scaled ellipse ellipse_form <= rho^2.
double droplet_radial_cdf(double rho, double alpha, double tau, double tol = 1e-10);

std::string report_json(const ComparisonReport& r);

}  // namespace rmx
