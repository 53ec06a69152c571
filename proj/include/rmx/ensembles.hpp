#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "rmx/core.hpp"

namespace rmx {

struct MatrixPair {
  Eigen::MatrixXcd X1, X2;  // N x (N+nu)
};

enum class SpectrumKind { wishart, dirac };

struct SpectrumSample {
  SpectrumKind kind = SpectrumKind::wishart;
  Eigen::VectorXcd eigenvalues;
  int zero_mode_count = 0;
  SeedSpec seed;
  EnsembleParams params_snapshot;
};

// Real and imaginary parts of P, Q entries have variance 1/(4N), so E|P_jk|^2 = 1/(2N).
double ginibre_component_sigma(int N);

MatrixPair sample_ginibre_pair(const EnsembleParams& params, SeedSpec seed);

// Dense nonsymmetric eigenvalues; failures carry the seed.
Eigen::VectorXcd eigenvalues_of(const Eigen::MatrixXcd& m, SeedSpec seed);

SpectrumSample wishart_eigs(const EnsembleParams& params, SeedSpec seed);
// Both square roots of every Wishart eigenvalue: entries [0, N) are principal
// roots, entries [N, 2N) their negatives. Zero modes are only counted.
SpectrumSample dirac_eigs(const EnsembleParams& params, SeedSpec seed);
// Diagonalizes the full (2N+nu)-square Dirac matrix. Small-N oracle.
SpectrumSample dirac_eigs_direct(const EnsembleParams& params, SeedSpec seed);

Eigen::MatrixXcd dirac_matrix(const MatrixPair& pair);

enum class SampleMethod { wishart, dirac, dirac_direct };

// One sample per trial; trial t uses stream_id = t.
std::vector<SpectrumSample> sample_trials(const EnsembleParams& params, SampleMethod method,
                                          std::uint64_t master_seed, int trials, int threads);

// Max over a of distance to a greedily matched element of b (sizes must agree).
double multiset_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// CSV `re,im,kind,trial`. Zero modes appear as (0,0) rows only if requested.
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& samples, bool emit_zero_modes);

}  // namespace rmx
