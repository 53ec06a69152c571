#ifdef RMX_USE_LAPACKE
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#define EIGEN_USE_LAPACKE
#endif

#include "rmx/ensembles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "rmx/io.hpp"
#include "rmx/parallel.hpp"
#include "rmx/random.hpp"

namespace rmx {

double ginibre_component_sigma(int N) { return 0.5 / std::sqrt(static_cast<double>(N)); }

MatrixPair sample_ginibre_pair(const EnsembleParams& params, SeedSpec seed) {
  const int N = params.N;
  const int cols = N + params.nu_int();
  const double sigma = ginibre_component_sigma(N);
  const double sp = std::sqrt(1.0 + params.tau), sq = std::sqrt(1.0 - params.tau);
  const CounterNormal gen(seed);

  MatrixPair out{Eigen::MatrixXcd(N, cols), Eigen::MatrixXcd(N, cols)};
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < N; ++i) {
      const std::uint64_t idx = static_cast<std::uint64_t>(j) * N + i;
      const auto [p1, p2] = gen.normal_pair(0, idx);
      const auto [q1, q2] = gen.normal_pair(1, idx);
      const cplx P(sigma * p1, sigma * p2), Q(sigma * q1, sigma * q2);
      out.X1(i, j) = sp * P + sq * Q;
      out.X2(i, j) = sp * P - sq * Q;
    }
  }
  return out;
}

Eigen::VectorXcd eigenvalues_of(const Eigen::MatrixXcd& m, SeedSpec seed) {
  if (!m.allFinite()) throw NumericalFailure("eigensolver input has non-finite entries", seed.master_seed, seed.stream_id);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eigensolver did not converge", seed.master_seed, seed.stream_id);
  return solver.eigenvalues();
}

SpectrumSample wishart_eigs(const EnsembleParams& params, SeedSpec seed) {
  const MatrixPair pair = sample_ginibre_pair(params, seed);
  const Eigen::MatrixXcd X = pair.X1 * pair.X2.adjoint();
  SpectrumSample s;
  s.kind = SpectrumKind::wishart;
  s.eigenvalues = eigenvalues_of(X, seed);
  s.zero_mode_count = 0;
  s.seed = seed;
  s.params_snapshot = params;
  return s;
}

SpectrumSample dirac_eigs(const EnsembleParams& params, SeedSpec seed) {
  SpectrumSample w = wishart_eigs(params, seed);
  const int N = params.N;
  SpectrumSample s;
  s.kind = SpectrumKind::dirac;
  s.eigenvalues.resize(2 * N);
  for (int i = 0; i < N; ++i) {
    const cplx r = std::sqrt(w.eigenvalues(i));
    s.eigenvalues(i) = r;
    s.eigenvalues(N + i) = -r;
  }
  s.zero_mode_count = params.nu_int();
  s.seed = seed;
  s.params_snapshot = params;
  return s;
}

Eigen::MatrixXcd dirac_matrix(const MatrixPair& pair) {
  const Eigen::Index N = pair.X1.rows(), M = pair.X1.cols();
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N + M, N + M);
  D.topRightCorner(N, M) = pair.X1;
  D.bottomLeftCorner(M, N) = pair.X2.adjoint();
  return D;
}

SpectrumSample dirac_eigs_direct(const EnsembleParams& params, SeedSpec seed) {
  if (params.N > 400) throw InvalidArgument("dirac_eigs_direct: N must be <= 400");
  const MatrixPair pair = sample_ginibre_pair(params, seed);
  SpectrumSample s;
  s.kind = SpectrumKind::dirac;
  s.eigenvalues = eigenvalues_of(dirac_matrix(pair), seed);
  s.zero_mode_count = 0;
  s.seed = seed;
  s.params_snapshot = params;
  return s;
}

std::vector<SpectrumSample> sample_trials(const EnsembleParams& params, SampleMethod method,
                                          std::uint64_t master_seed, int trials, int threads) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  std::vector<SpectrumSample> out(trials);
  parallel_for(trials, threads, [&](int t) {
    const SeedSpec seed{master_seed, static_cast<std::uint64_t>(t)};
    switch (method) {
      case SampleMethod::wishart:
        out[t] = wishart_eigs(params, seed);
        break;
      case SampleMethod::dirac:
        out[t] = dirac_eigs(params, seed);
        break;
      case SampleMethod::dirac_direct:
        out[t] = dirac_eigs_direct(params, seed);
        break;
    }
  });
  return out;
}

double multiset_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw InvalidArgument("multiset_distance: sizes differ");
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Eigen::Index best = -1;
    double bd = inf;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a(i) - b(j));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    used[best] = 1;
    worst = std::max(worst, bd);
  }
  return worst;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumSample>& samples, bool emit_zero_modes) {
  out << "re,im,kind,trial\n";
  for (const auto& s : samples) {
    const char* kind = s.kind == SpectrumKind::wishart ? "wishart" : "dirac";
    const std::string trial = std::to_string(s.seed.stream_id);
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
      out << format_double(s.eigenvalues(i).real()) << ',' << format_double(s.eigenvalues(i).imag()) << ',' << kind
          << ',' << trial << '\n';
    if (emit_zero_modes)
      for (int z = 0; z < s.zero_mode_count; ++z) out << "0,0," << kind << ',' << trial << '\n';
  }
}

}  // namespace rmx
