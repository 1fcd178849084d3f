#include "sinhreg/windows.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "sinhreg/errors.hpp"
#include "sinhreg/specfun.hpp"

namespace sinhreg {
namespace {

using std::numbers::pi;

std::atomic<bool> g_sign_fault{false};

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// 1 / sinh(beta) written as 2 e^{-beta} / (1 - e^{-2 beta}) so it stays finite
// (and underflows gracefully) for large beta.
double inv_sinh_scaled(double beta) { return 2.0 * std::exp(-beta) / -std::expm1(-2.0 * beta); }

// J1(z)/z with the removable singularity at 0.
double j1_over_z(double z) {
  if (std::fabs(z) < 1e-4) return 0.5 - z * z / 16.0;
  return bessel_j1(z) / z;
}

// e^{-y} I1(y)/y.
double i1_over_y_scaled(double y) {
  if (y < 1e-4) return (0.5 + y * y / 16.0) * std::exp(-y);
  return bessel_i1_scaled(y) / y;
}

// Zeros of J1 via McMahon's expansion, polished by secant steps.
double j1_zero(long k) {
  const double b = (static_cast<double>(k) + 0.25) * pi;
  double x0 = b - 0.375 / b + 0.0234375 / (b * b * b);
  double x1 = x0 + 1e-6;
  double f0 = bessel_j1(x0);
  double f1 = bessel_j1(x1);
  for (int it = 0; it < 8 && f1 != f0; ++it) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = bessel_j1(x1);
    if (std::fabs(x1 - x0) < 1e-15 * x1) break;
  }
  return x1;
}

// Index of the first zero of J1 strictly above y (zeros j_{1,k}, k >= 1).
long first_zero_index_above(double y) {
  long k = std::max(1L, static_cast<long>(std::floor(y / pi - 0.25)) - 1);
  while (j1_zero(k) <= y) ++k;
  return k;
}

// int_{y0}^inf |J1(y)| / sqrt(beta^2 + y^2) dy.
double bessel_leakage(double beta, double y0) {
  // Exact panels between consecutive zeros up to ~1e5, then the phase-averaged
  // tail (2/pi) int M1(y)/sqrt(beta^2+y^2) dy starting at a zero of J1, where
  // M1 is the Bessel modulus. The first neglected term is O(Y^{-5/2}).
  constexpr double kTailStart = 1e5;
  auto integrand = [beta](double y) { return std::fabs(bessel_j1(y)) / std::hypot(beta, y); };
  QuadratureOptions panel_opts;
  panel_opts.abs_tol = 1e-300;
  panel_opts.rel_tol = 1e-13;

  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  long k = first_zero_index_above(y0);
  double left = y0;
  double right = j1_zero(k);
  while (true) {
    if (right > left) add(integrate_adaptive(integrand, left, right, panel_opts).value);
    if (right >= std::max(kTailStart, y0)) break;
    left = right;
    right = j1_zero(++k);
  }

  const double tail_y = right;
  // Substitute y = Y / s^2 so the tail integrand is smooth on (0, 1].
  auto tail = [beta, tail_y](double s) {
    if (s <= 0.0) return 0.0;
    const double s2 = s * s;
    const double y = tail_y / s2;
    const double iy2 = 1.0 / (y * y);
    const double modulus_corr = std::sqrt(1.0 + 0.375 * iy2 - 45.0 / 128.0 * iy2 * iy2);
    return 2.0 * std::sqrt(2.0 / pi) * std::sqrt(tail_y) * modulus_corr /
           std::sqrt(beta * beta * s2 * s2 + tail_y * tail_y);
  };
  QuadratureOptions tail_opts;
  tail_opts.abs_tol = 1e-300;
  tail_opts.rel_tol = 1e-13;
  add(2.0 / pi * integrate_adaptive(tail, 0.0, 1.0, tail_opts).value);
  return sum;
}

const WindowSpec& require_sinh(const WindowSpec& spec, const char* where) {
  if (spec.kind != WindowKind::Sinh) {
    throw UnsupportedKindError(std::string(where) + ": only the sinh window is supported");
  }
  spec.validate();
  return spec;
}

}  // namespace

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::None:
      return "none";
    case WindowKind::Gaussian:
      return "gaussian";
    case WindowKind::Sinh:
      return "sinh";
  }
  return "unknown";
}

WindowKind parse_window_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none" || lower == "no") return WindowKind::None;
  if (lower == "gaussian" || lower == "gauss") return WindowKind::Gaussian;
  if (lower == "sinh") return WindowKind::Sinh;
  throw ConfigurationError("unknown window kind '" + std::string(text) + "'");
}

WindowSpec WindowSpec::none() { return {}; }

WindowSpec WindowSpec::gaussian(double variance_scale) {
  WindowSpec spec;
  spec.kind = WindowKind::Gaussian;
  spec.variance_scale = variance_scale;
  spec.validate();
  return spec;
}

WindowSpec WindowSpec::sinh(double beta, double half_width_m) {
  WindowSpec spec;
  spec.kind = WindowKind::Sinh;
  spec.beta = beta;
  spec.half_width_m = half_width_m;
  spec.validate();
  return spec;
}

void WindowSpec::validate() const {
  switch (kind) {
    case WindowKind::None:
      return;
    case WindowKind::Gaussian:
      if (!finite_positive(variance_scale)) {
        throw ConfigurationError("gaussian window: variance scale must be finite and > 0");
      }
      return;
    case WindowKind::Sinh:
      if (!finite_positive(beta) || !finite_positive(half_width_m)) {
        throw ConfigurationError("sinh window: beta and m must be finite and > 0");
      }
      return;
  }
  throw ConfigurationError("invalid window kind");
}

double window_eval(const WindowSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("window_eval: non-finite argument");
  switch (spec.kind) {
    case WindowKind::None:
      return 1.0;
    case WindowKind::Gaussian:
      spec.validate();
      return std::exp(-spec.variance_scale * x * x);
    case WindowKind::Sinh: {
      spec.validate();
      const double ratio = x / spec.half_width_m;
      if (std::fabs(ratio) >= 1.0) return 0.0;
      const double s = std::sqrt((1.0 - ratio) * (1.0 + ratio));
      const double b = spec.beta;
      // sinh(b s) / sinh(b) = e^{b(s-1)} (1 - e^{-2bs}) / (1 - e^{-2b});
      // s - 1 = -ratio^2 / (1 + s) avoids cancellation near the centre.
      const double s_minus_1 = -(ratio * ratio) / (1.0 + s);
      const double value = std::exp(b * s_minus_1) * std::expm1(-2.0 * b * s) / std::expm1(-2.0 * b);
      return g_sign_fault.load(std::memory_order_relaxed) ? -value : value;
    }
  }
  throw ConfigurationError("invalid window kind");
}

double window_fourier_closed_form(const WindowSpec& spec, double w) {
  require_sinh(spec, "window_fourier_closed_form");
  if (!std::isfinite(w)) throw DomainError("window_fourier_closed_form: non-finite argument");
  const double m = spec.half_width_m;
  const double beta = spec.beta;
  const double scale = m * beta * std::sqrt(pi / 2.0);
  const double v = m * std::fabs(w) / beta;
  if (v > 1.0) {
    const double z = beta * std::sqrt((v - 1.0) * (v + 1.0));
    return scale * inv_sinh_scaled(beta) * j1_over_z(z);
  }
  const double y = beta * std::sqrt((1.0 - v) * (1.0 + v));
  // I1(y)/y / sinh(beta) = [e^{-y} I1(y)/y] * 2 e^{y-beta} / (1 - e^{-2 beta})
  return scale * i1_over_y_scaled(y) * 2.0 * std::exp(y - beta) / -std::expm1(-2.0 * beta);
}

double leakage_integral(const WindowSpec& spec, double cutoff) {
  require_sinh(spec, "leakage_integral");
  if (!finite_positive(cutoff)) throw ConfigurationError("leakage_integral: cutoff must be > 0");
  const double m = spec.half_width_m;
  const double beta = spec.beta;
  const double w_edge = beta / m;  // v = 1

  double below_edge = 0.0;
  double y0 = 0.0;
  if (cutoff < w_edge) {
    auto ft = [&spec](double w) { return std::fabs(window_fourier_closed_form(spec, w)); };
    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    below_edge = integrate_adaptive(ft, cutoff, w_edge, opts).value;
  } else {
    const double v = m * cutoff / beta;
    y0 = beta * std::sqrt((v - 1.0) * (v + 1.0));
  }
  // For v >= 1, substituting y = beta sqrt(v^2 - 1):
  //   int |ghat| dw = beta sqrt(pi/2) / sinh(beta) * int_{y0}^inf |J1(y)| / sqrt(beta^2 + y^2) dy
  const double prefactor = beta * std::sqrt(pi / 2.0) * inv_sinh_scaled(beta);
  if (prefactor == 0.0) return below_edge;
  return below_edge + prefactor * bessel_leakage(beta, y0);
}

namespace testing {
void set_window_sign_fault(bool enabled) { g_sign_fault.store(enabled); }
bool window_sign_fault() { return g_sign_fault.load(); }
}  // namespace testing

}  // namespace sinhreg
