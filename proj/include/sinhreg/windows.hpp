#pragma once

#include <string_view>

namespace sinhreg {

enum class WindowKind { None, Gaussian, Sinh };

std::string_view to_string(WindowKind kind);
/// Accepts "none"/"no", "gaussian", "sinh" (case-insensitive).
WindowKind parse_window_kind(std::string_view text);

/// A regularization window g with g(0) = 1.
///
/// Sinh:     g(x) = sinh(beta sqrt(1 - x^2/m^2)) / sinh(beta) on [-m, m], 0 outside.
/// Gaussian: g(x) = exp(-variance_scale x^2).
/// None:     g(x) = 1.
struct WindowSpec {
  WindowKind kind = WindowKind::None;
  double beta = 0.0;
  double half_width_m = 0.0;
  double variance_scale = 0.0;

  static WindowSpec none();
  static WindowSpec gaussian(double variance_scale);
  static WindowSpec sinh(double beta, double half_width_m);

  /// Throws ConfigurationError if the shape parameters are not finite and positive.
  void validate() const;
};

double window_eval(const WindowSpec& spec, double x);

/// Fourier transform (1/sqrt(2 pi)) int g(x) e^{-iwx} dx of the sinh window.
///
/// With v = m w / beta the transform is
///   m sqrt(pi/2) beta / sinh(beta) * J1(beta sqrt(v^2-1)) / (beta sqrt(v^2-1))   for |v| > 1,
/// and the modified-Bessel continuation I1(y)/y, y = beta sqrt(1-v^2), for |v| < 1.
/// Both branches meet at 1/2 for |v| = 1.
double window_fourier_closed_form(const WindowSpec& spec, double w);

/// int_cutoff^inf |ghat(w)| dw for the sinh window, absolute accuracy ~1e-12.
double leakage_integral(const WindowSpec& spec, double cutoff);

namespace testing {
/// Flips the sign of the sinh window. Only for demonstrating that the
/// self-test catches a broken window; never enabled in normal runs.
void set_window_sign_fault(bool enabled);
bool window_sign_fault();
}  // namespace testing

}  // namespace sinhreg
