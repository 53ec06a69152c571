#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rmx {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numeric failures carry the seed of the failing draw when there is one.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what, std::optional<std::uint64_t> seed = {},
                            std::optional<std::uint64_t> stream = {})
      : std::runtime_error(what), seed_(seed), stream_(stream) {}
  std::optional<std::uint64_t> seed() const { return seed_; }
  std::optional<std::uint64_t> stream() const { return stream_; }

 private:
  std::optional<std::uint64_t> seed_;
  std::optional<std::uint64_t> stream_;
};

class QuadratureFailure : public NumericalFailure {
 public:
  QuadratureFailure(const std::string& what, double estimate, double error)
      : NumericalFailure(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error_estimate() const { return error_; }

 private:
  double estimate_;
  double error_;
};

struct EnsembleParams {
  int N = 1;
  double nu = 0.0;
  double tau = 0.0;
  double alpha_N = 0.0;
  // Unavailable when tau is 0 or 1 (A, B, c, a), when nu < 0 (a),
  // when alpha_N <= 0 (delta) or alpha_N < 0 (tau_c).
  std::optional<double> A, B, c, a, delta, tau_c;

  bool integer_nu() const;
  int nu_int() const;  // throws unless integer_nu()
  double A_or_throw() const;
  double B_or_throw() const;
  double c_or_throw() const;
  double a_or_throw() const;
  double delta_or_throw() const;
};

EnsembleParams make_params(int N, double nu, double tau);

// Requires tau in (0,1); throws InvalidArgument naming the caller otherwise.
void require_open_tau(const EnsembleParams& p, std::string_view who);

std::string to_json(const EnsembleParams& p);
EnsembleParams params_from_json(std::string_view text);

// Complex number stored as log-magnitude and phase; log_mag = -inf is zero.
struct ScaledComplex {
  double log_mag = -inf;
  double phase = 0.0;

  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return {0.0, 0.0}; }
  static ScaledComplex from(cplx z);
  static ScaledComplex from_log(double log_mag) { return {log_mag, 0.0}; }

  bool is_zero() const { return log_mag == -inf; }
  cplx to_complex() const;
  // Real part of the value; overflows to +-inf like to_complex.
  double real() const { return to_complex().real(); }
  ScaledComplex conj() const;
};

double wrap_phase(double phase);
ScaledComplex scaled_value(double log_magnitude, double phase);

ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y);
ScaledComplex operator/(const ScaledComplex& x, const ScaledComplex& y);
ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y);
ScaledComplex operator-(const ScaledComplex& x);
inline ScaledComplex operator-(const ScaledComplex& x, const ScaledComplex& y) { return x + (-y); }
ScaledComplex& operator*=(ScaledComplex& x, const ScaledComplex& y);
ScaledComplex& operator+=(ScaledComplex& x, const ScaledComplex& y);
ScaledComplex pow(const ScaledComplex& x, double p);
ScaledComplex exp_scaled(cplx w);  // e^w without overflow

struct Grid2D {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  int nx = 1, ny = 1;

  void validate() const;
  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  double cell_area() const { return dx() * dy(); }
  double cell_area_dA() const { return cell_area() / pi; }
  cplx center(int i, int j) const { return {x_min + (i + 0.5) * dx(), y_min + (j + 0.5) * dy()}; }
  // Half-open cells; false when the point lies outside the grid.
  bool locate(cplx z, int& i, int& j) const;
};

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

}  // namespace rmx
