#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rmx/core.hpp"
#include "rmx/globallaw.hpp"

namespace rmx {

// Two gas points closer than 1e-12.
class CoincidentPoints : public InvalidArgument {
 public:
  CoincidentPoints(int i, int j);
  int first() const { return i_; }
  int second() const { return j_; }

 private:
  int i_, j_;
};

// Discrete log-gas with external field n * Q_tilde (alpha, tau).
class GasConfig {
 public:
  GasConfig(Eigen::VectorXcd points, double alpha, double tau);

  const Eigen::VectorXcd& points() const { return points_; }
  void set_points(Eigen::VectorXcd points);
  int size() const { return static_cast<int>(points_.size()); }
  double alpha() const { return alpha_; }
  double tau() const { return tau_; }

  // Cached; recomputed after set_points.
  double energy(int threads = 1) const;

  double grad_norm = inf;

 private:
  Eigen::VectorXcd points_;
  double alpha_, tau_;
  mutable std::optional<double> energy_;
};

// sum_{j != k} log 1/|z_j - z_k| + n sum_j Q_tilde(z_j)
double gas_energy(const GasConfig& config, int threads = 1);
// dE/dx_j + i dE/dy_j
Eigen::VectorXcd gas_gradient(const GasConfig& config, int threads = 1);
// E(points + shift) - E(points), summed from per-term differences so that
// small changes survive cancellation.
double energy_difference(const GasConfig& config, const Eigen::VectorXcd& shift, int threads = 1);

struct MinimizeOptions {
  int max_iters = 20000;
  double grad_tol = 1e-8;
  double min_sep = 1e-8;
  double armijo_c = 1e-4;
  int threads = 1;
};

enum class MinimizeStatus { converged, max_iters, stagnated };

struct MinimizeStep {
  int iter = 0;
  double energy = 0;
  double grad_norm = 0;
  double step = 0;
};

struct MinimizeResult {
  GasConfig config;
  MinimizeStatus status = MinimizeStatus::max_iters;
  std::vector<MinimizeStep> log;
};

// Gradient descent, Barzilai-Borwein trial step, Armijo backtracking by
// halving. grad_norm is the Euclidean norm over all 2n real components.
MinimizeResult gas_minimize(const GasConfig& initial, const MinimizeOptions& opts = {});

// n points uniform in the bounding box of the droplet ellipse.
GasConfig uniform_box_config(int n, double alpha, double tau, std::uint64_t seed);

struct Coverage {
  double inside_fraction = 0;
  double hausdorff_proxy = 0;
};
// inside: ellipse_form <= dilation^2. hausdorff_proxy: max over boundary
// samples of the distance to the nearest gas point.
Coverage coverage_metric(const GasConfig& config, const DropletGeometry& geometry, double dilation = 1.05,
                         int boundary_samples = 256);

double mean_nearest_neighbor(const Eigen::VectorXcd& points);

void write_gas_csv(std::ostream& out, const GasConfig& config);
std::string minimize_log_json(const MinimizeResult& result);

}  // namespace rmx
