#include "rmx/core.hpp"

#include <cmath>

#include "json.hpp"

namespace rmx {

bool EnsembleParams::integer_nu() const { return nu >= 0 && std::floor(nu) == nu && nu < 1e9; }

int EnsembleParams::nu_int() const {
  if (!integer_nu()) throw InvalidArgument("nu must be a non-negative integer for sampling, got " + std::to_string(nu));
  return static_cast<int>(nu);
}

namespace {

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw InvalidArgument(std::string("parameter ") + name + " is unavailable for these (N, nu, tau)");
  return *v;
}

}  // namespace

double EnsembleParams::A_or_throw() const { return need(A, "A"); }
double EnsembleParams::B_or_throw() const { return need(B, "B"); }
double EnsembleParams::c_or_throw() const { return need(c, "c"); }
double EnsembleParams::a_or_throw() const { return need(a, "a"); }
double EnsembleParams::delta_or_throw() const { return need(delta, "delta"); }

EnsembleParams make_params(int N, double nu, double tau) {
  if (N < 1) throw InvalidArgument("N must be positive, got " + std::to_string(N));
  if (!(nu > -1.0) || !std::isfinite(nu)) throw InvalidArgument("nu must be > -1, got " + std::to_string(nu));
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("tau must lie in [0,1], got " + std::to_string(tau));

  EnsembleParams p;
  p.N = N;
  p.nu = nu;
  p.tau = tau;
  p.alpha_N = nu / N;
  if (tau > 0.0 && tau < 1.0) {
    const double s = 1.0 - tau * tau;
    p.A = 2.0 / s;
    p.B = 2.0 * tau / s;
    p.c = N / tau;
    if (nu >= 0.0) p.a = s * std::sqrt(nu) / tau;
  }
  if (p.alpha_N > 0.0 && tau < 1.0) {
    const double s = 1.0 - tau * tau;
    p.delta = 1.0 / (s * s * p.alpha_N);
  }
  if (p.alpha_N >= 0.0) p.tau_c = 1.0 / std::sqrt(1.0 + p.alpha_N);
  return p;
}

void require_open_tau(const EnsembleParams& p, std::string_view who) {
  if (!(p.tau > 0.0 && p.tau < 1.0))
    throw InvalidArgument(std::string(who) + ": requires tau in (0,1), got " + std::to_string(p.tau));
}

std::string to_json(const EnsembleParams& p) {
  nlohmann::ordered_json j;
  j["N"] = p.N;
  j["nu"] = p.nu;
  j["tau"] = p.tau;
  j["alpha_N"] = p.alpha_N;
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v)
      j[k] = *v;
    else
      j[k] = nullptr;
  };
  put("A", p.A);
  put("B", p.B);
  put("c", p.c);
  put("a", p.a);
  put("delta", p.delta);
  put("tau_c", p.tau_c);
  return j.dump();
}

EnsembleParams params_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("EnsembleParams JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("N") || !j.contains("nu") || !j.contains("tau"))
    throw InvalidArgument("EnsembleParams JSON must contain N, nu and tau");
  if (!j["N"].is_number_integer()) throw InvalidArgument("EnsembleParams JSON: N must be an integer");
  const EnsembleParams p = make_params(j["N"].get<int>(), j["nu"].get<double>(), j["tau"].get<double>());

  auto check = [&](const char* key, std::optional<double> expect) {
    if (!j.contains(key)) return;
    const auto& v = j[key];
    if (v.is_null()) {
      if (expect) throw InvalidArgument(std::string("EnsembleParams JSON: ") + key + " is null but derivable");
      return;
    }
    if (!expect) throw InvalidArgument(std::string("EnsembleParams JSON: ") + key + " given but unavailable");
    const double got = v.get<double>();
    if (std::abs(got - *expect) > 1e-12 * std::max(1.0, std::abs(*expect)))
      throw InvalidArgument(std::string("EnsembleParams JSON: ") + key + " inconsistent with N, nu, tau");
  };
  check("alpha_N", p.alpha_N);
  check("A", p.A);
  check("B", p.B);
  check("c", p.c);
  check("a", p.a);
  check("delta", p.delta);
  check("tau_c", p.tau_c);
  return p;
}

double wrap_phase(double phase) {
  if (!std::isfinite(phase)) return 0.0;
  if (phase > -pi && phase <= pi) return phase;
  double r = std::remainder(phase, 2 * pi);
  if (r <= -pi) r += 2 * pi;
  return r;
}

ScaledComplex scaled_value(double log_magnitude, double phase) {
  if (log_magnitude == -inf || std::isnan(log_magnitude)) return ScaledComplex::zero();
  return {log_magnitude, wrap_phase(phase)};
}

ScaledComplex ScaledComplex::from(cplx z) {
  if (z == cplx(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

cplx ScaledComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

ScaledComplex ScaledComplex::conj() const {
  if (is_zero()) return zero();
  return scaled_value(log_mag, -phase);
}

ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero() || y.is_zero()) return ScaledComplex::zero();
  return scaled_value(x.log_mag + y.log_mag, x.phase + y.phase);
}

ScaledComplex operator/(const ScaledComplex& x, const ScaledComplex& y) {
  if (y.is_zero()) throw NumericalFailure("ScaledComplex division by zero");
  if (x.is_zero()) return ScaledComplex::zero();
  return scaled_value(x.log_mag - y.log_mag, x.phase - y.phase);
}

ScaledComplex operator-(const ScaledComplex& x) {
  if (x.is_zero()) return x;
  return scaled_value(x.log_mag, x.phase + pi);
}

ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const ScaledComplex& big = x.log_mag >= y.log_mag ? x : y;
  const ScaledComplex& small = x.log_mag >= y.log_mag ? y : x;
  const cplx r = std::polar(std::exp(small.log_mag - big.log_mag), small.phase - big.phase);
  const double t = 2.0 * r.real() + std::norm(r);
  if (t <= -1.0) {
    const cplx s = 1.0 + r;
    if (s == cplx(0.0, 0.0)) return ScaledComplex::zero();
    return scaled_value(big.log_mag + std::log(std::abs(s)), big.phase + std::arg(s));
  }
  return scaled_value(big.log_mag + 0.5 * std::log1p(t), big.phase + std::arg(1.0 + r));
}

ScaledComplex& operator*=(ScaledComplex& x, const ScaledComplex& y) { return x = x * y; }
ScaledComplex& operator+=(ScaledComplex& x, const ScaledComplex& y) { return x = x + y; }

ScaledComplex pow(const ScaledComplex& x, double p) {
  if (x.is_zero()) return p == 0.0 ? ScaledComplex::one() : ScaledComplex::zero();
  return scaled_value(p * x.log_mag, p * x.phase);
}

ScaledComplex exp_scaled(cplx w) { return scaled_value(w.real(), w.imag()); }

void Grid2D::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) throw InvalidArgument("Grid2D: require x_min < x_max and y_min < y_max");
  if (nx < 1 || ny < 1) throw InvalidArgument("Grid2D: nx and ny must be positive");
}

bool Grid2D::locate(cplx z, int& i, int& j) const {
  const double x = z.real(), y = z.imag();
  if (!(x >= x_min && x < x_max && y >= y_min && y < y_max)) return false;
  i = static_cast<int>(std::floor((x - x_min) / dx()));
  j = static_cast<int>(std::floor((y - y_min) / dy()));
  if (i >= nx) i = nx - 1;
  if (j >= ny) j = ny - 1;
  return true;
}

}  // namespace rmx
