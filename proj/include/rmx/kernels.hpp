#pragma once

#include <iosfwd>
#include <vector>

#include "rmx/core.hpp"
#include "rmx/io.hpp"

namespace rmx {

// raw: a specific representative of the kernel's cocycle class.
// cocycle_free: a quantity invariant under cocycles (diagonals, moduli).
enum class Gauge { raw, cocycle_free };

struct KernelEval {
  ScaledComplex value;
  Gauge gauge = Gauge::raw;
  EnsembleParams params_snapshot;
};

// L_j^nu(z) by the three-term recurrence with rescaling.
ScaledComplex laguerre_scaled(int j, double nu, cplx z);
// L_0^nu(z), ..., L_{count-1}^nu(z).
std::vector<ScaledComplex> laguerre_sequence(int count, double nu, cplx z);

double log_norm_h(int j, const EnsembleParams& params);

// Exact finite-N kernels (Hermitian representatives).
KernelEval kernel_wishart(cplx zeta, cplx eta, const EnsembleParams& params);
// 2|zeta eta| K_wishart(zeta^2, eta^2)
KernelEval kernel_dirac(cplx zeta, cplx eta, const EnsembleParams& params);
// Same kernel summed directly against the squared-variable weight e^{-N V_N}.
KernelEval kernel_dirac_direct(cplx zeta, cplx eta, const EnsembleParams& params);

// One-point function of the Dirac eigenvalues, product form.
double density_dirac(cplx zeta, const EnsembleParams& params);

// Rescaled kernels at the origin.
//  Dirac:   (N delta)^{-1/2} K_N(z/(N delta)^{1/4}, w/(N delta)^{1/4})
//  Wishart: (N delta)^{-1}   K_N(z/(N delta)^{1/2}, w/(N delta)^{1/2})
KernelEval rescaled_kernel_dirac(cplx z, cplx w, const EnsembleParams& params);
KernelEval rescaled_kernel_wishart(cplx z, cplx w, const EnsembleParams& params);

// Rescaled one-point function, closed form in the local variables.
double rescaled_density(cplx z, const EnsembleParams& params);
double rescaled_density_via_kernel(cplx z, const EnsembleParams& params);

// det[K(z_i, z_j)], rescaled Dirac kernel or the unscaled one.
double corr_k(const std::vector<cplx>& points, const EnsembleParams& params, bool rescaled);

enum class Regime { bulk, critical, gapped };
Regime classify_regime(double alpha, double tau);

// exp(z conj(w) - |z|^2/2 - |w|^2/2)
cplx ginibre_kernel(cplx z, cplx w);
cplx limit_kernel(cplx z, cplx w, double alpha, Regime regime);
cplx limit_kernel(cplx z, cplx w, double alpha, double tau);

struct IkParams {
  int k = 0;
  double contour_radius = 0.5;
  int nodes = 64;
};
// Radius (1+tau^2)/2, midway between the removable point tau^2 and 1.
IkParams default_ik_params(int k, double tau);
// Radius in (tau^2, 1) minimizing the peak of the integrand on the circle, which
// bounds the cancellation in the trapezoidal sum.
IkParams tuned_ik_params(int k, cplx z, const EnsembleParams& params);
inline constexpr int ik_max_nodes = 1 << 16;

ScaledComplex ik_sum(int k, cplx z, const EnsembleParams& params);
ScaledComplex ik_contour(int k, cplx z, const EnsembleParams& params, const IkParams& ik);
// (1 - (tau^2/s)^M)/(s - tau^2), with the removable point handled by series.
cplx ik_geometric_factor(cplx s, double tau, int M);

// Rescaled Wishart kernel from the first m terms of the k-expansion. It differs
// from rescaled_kernel_wishart by the cocycle g(z) conj(g(w)), g(z) = e^{i tau sqrt(nu) Im z}.
KernelEval kernel_via_ik(cplx z, cplx w, const EnsembleParams& params, int m);
int default_truncation(int N);

struct CutRow {
  double coord = 0;
  char axis = 'x';
  double finite_N = 0;
  double limit = 0;
  double abs_err = 0;
};
// Rescaled density and its limit along the real (axis 'x') or imaginary ('y') axis.
std::vector<CutRow> kernel_cut(const EnsembleParams& params, char axis, const Range& range, int threads);
void write_cut_csv(std::ostream& out, const std::vector<CutRow>& rows);

}  // namespace rmx
