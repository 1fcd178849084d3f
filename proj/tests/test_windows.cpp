#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sinhreg/errors.hpp"
#include "sinhreg/specfun.hpp"
#include "sinhreg/windows.hpp"

using namespace sinhreg;
using std::numbers::pi;

namespace {

// (1/sqrt(2 pi)) int_{-m}^{m} g(x) cos(w x) dx by quadrature of the window itself.
double ft_by_quadrature(const WindowSpec& w, double freq) {
  auto f = [&](double x) { return window_eval(w, x) * std::cos(freq * x); };
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_subintervals = 20000;
  return 2.0 * integrate_adaptive(f, 0.0, w.half_width_m, opt).value / std::sqrt(2.0 * pi);
}

}  // namespace

TEST_SUITE("windows") {

TEST_CASE("sinh window values") {
  const WindowSpec w = WindowSpec::sinh(5.0, 10.0);
  CHECK(window_eval(w, 0.0) == 1.0);
  CHECK(window_eval(w, 10.0) == 0.0);
  CHECK(window_eval(w, -10.0) == 0.0);
  // sinh(4)/sinh(5) = 0.367772728223385541...
  CHECK(std::fabs(window_eval(w, 6.0) - 0.36777272822338554118) <= 1e-15);
  CHECK(std::fabs(window_eval(w, 6.0) - std::sinh(4.0) / std::sinh(5.0)) <= 1e-15);
}

TEST_CASE("gaussian and identity windows") {
  CHECK(window_eval(WindowSpec::gaussian(0.25), 0.0) == 1.0);
  CHECK(window_eval(WindowSpec::gaussian(0.25), 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(window_eval(WindowSpec::none(), 123.0) == 1.0);
}

TEST_CASE("invalid specs are configuration errors") {
  CHECK_THROWS_AS(window_eval(WindowSpec::sinh(0.0, 1.0), 0.0), ConfigurationError);
  CHECK_THROWS_AS(window_eval(WindowSpec::sinh(1.0, -1.0), 0.0), ConfigurationError);
  CHECK_THROWS_AS(window_eval(WindowSpec::gaussian(std::nan("")), 0.0), ConfigurationError);
  CHECK_THROWS_AS(window_eval(WindowSpec::none(), std::nan("")), DomainError);
  CHECK(parse_window_kind("SINH") == WindowKind::Sinh);
  CHECK(parse_window_kind("no") == WindowKind::None);
  CHECK_THROWS_AS(parse_window_kind("kaiser"), ConfigurationError);
}

TEST_CASE("compact support, evenness and monotonicity") {
  const WindowSpec w = WindowSpec::sinh(7.5, 4.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(4.0, 1e3);
  for (int i = 0; i < 100000; ++i) {
    const double x = std::nextafter(u(rng), 1e4);
    REQUIRE(window_eval(w, x) == 0.0);
    REQUIRE(window_eval(w, -x) == 0.0);
  }
  double prev = window_eval(w, 0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double x = 4.0 * i / 10000.0;
    const double g = window_eval(w, x);
    REQUIRE(g == window_eval(w, -x));
    REQUIRE(g <= prev);
    REQUIRE(g >= 0.0);
    prev = g;
  }
}

TEST_CASE("no overflow for large beta") {
  for (double beta : {700.0, 1000.0, 2000.0}) {
    const WindowSpec w = WindowSpec::sinh(beta, 50.0);
    CHECK(window_eval(w, 0.0) == 1.0);
    for (double x : {0.1, 1.0, 10.0, 49.0, 49.999}) {
      const double g = window_eval(w, x);
      CHECK(std::isfinite(g));
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
    }
  }
  // sinh(b s)/sinh(b) ~ exp(b (s - 1)) for large b.
  const WindowSpec w = WindowSpec::sinh(2000.0, 50.0);
  const double s = std::sqrt(1.0 - 0.01);
  CHECK(window_eval(w, 5.0) == doctest::Approx(std::exp(2000.0 * (s - 1.0))).epsilon(1e-12));
}

TEST_CASE("fourier transform reference values") {
  // mpmath quadrature of the window with beta = 8, m = 9.
  const WindowSpec w = WindowSpec::sinh(8.0, 9.0);
  CHECK(std::fabs(window_fourier_closed_form(w, 0.0) - 3.0262086392077072796) <= 1e-12);
  CHECK(std::fabs(window_fourier_closed_form(w, 0.5) - 0.99547900763178726520) <= 1e-12);
  CHECK(std::fabs(window_fourier_closed_form(w, 2.0) - 0.00025293930215598549910) <= 1e-14);
  CHECK(std::fabs(window_fourier_closed_form(w, 3.3) - 0.00013578399474644307780) <= 1e-14);
  CHECK(window_fourier_closed_form(w, 3.3) == window_fourier_closed_form(w, -3.3));
}

TEST_CASE("fourier transform agrees with quadrature on a grid") {
  const double delta = pi / 2.0;
  for (double beta : {4.0, 8.0, 16.0}) {
    const double m = beta / (pi - delta);
    const WindowSpec w = WindowSpec::sinh(beta, m);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double freq = 3.0 * (pi - delta) * i / 49.0;
      worst = std::max(worst, std::fabs(window_fourier_closed_form(w, freq) - ft_by_quadrature(w, freq)));
    }
    CAPTURE(beta);
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("fourier transform is continuous across |v| = 1") {
  const WindowSpec w = WindowSpec::sinh(8.0, 9.0);
  const double edge = 8.0 / 9.0;
  const double below = window_fourier_closed_form(w, edge * (1.0 - 1e-9));
  const double at = window_fourier_closed_form(w, edge);
  const double above = window_fourier_closed_form(w, edge * (1.0 + 1e-9));
  CHECK(std::fabs(below - at) <= 1e-8);
  CHECK(std::fabs(above - at) <= 1e-8);
}

TEST_CASE("fourier transform needs a sinh window") {
  CHECK_THROWS_AS(window_fourier_closed_form(WindowSpec::gaussian(1.0), 1.0), UnsupportedKindError);
  CHECK_THROWS_AS(leakage_integral(WindowSpec::none(), 1.0), UnsupportedKindError);
}

TEST_CASE("leakage integral") {
  const double delta = pi / 2.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double beta : {4.0, 6.0, 8.0, 12.0, 16.0}) {
    const double m = beta / (pi - delta);
    const double leak = leakage_integral(WindowSpec::sinh(beta, m), pi - delta);
    CAPTURE(beta);
    CHECK(leak > 0.0);
    CHECK(leak < prev);
    prev = leak;
  }
  const WindowSpec w = WindowSpec::sinh(8.0, 9.0);
  CHECK(leakage_integral(w, 1.0) > 0.0);
  CHECK(leakage_integral(w, 1.0) > leakage_integral(w, 2.0));
  // The transform decays like w^{-3/2}, so a negligible tail needs a large
  // beta: with beta = 40, m = 1, v >= 100 starts at w = 4000.
  const WindowSpec sharp = WindowSpec::sinh(40.0, 1.0);
  CHECK(leakage_integral(sharp, 100.0 * 40.0) <= 1e-15);
}

TEST_CASE("leakage integral matches direct quadrature of |ghat|") {
  const WindowSpec w = WindowSpec::sinh(6.0, 6.0 / (pi / 2.0));
  const double cutoff = pi / 2.0;
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.max_subintervals = 200000;
  // Oscillatory tail: integrate to a large finite limit then bound the rest.
  const double upper = 2000.0;
  const double head =
      integrate_adaptive([&](double v) { return std::fabs(window_fourier_closed_form(w, v)); }, cutoff, upper, opt)
          .value;
  const double leak = leakage_integral(w, cutoff);
  const double tail = leakage_integral(w, upper);
  CHECK(std::fabs((leak - tail) - head) <= 1e-10);
  // |J1(y)| ~ sqrt(2/(pi y)) |cos(.)| averages to (2/pi) sqrt(2/(pi y)), so the
  // tail is about prefactor * (2/pi) sqrt(2/pi) * 2 / sqrt(y0), y0 ~ m * upper.
  const double prefactor = w.beta * std::sqrt(pi / 2.0) / std::sinh(w.beta);
  const double y0 = w.beta * std::sqrt(std::pow(w.half_width_m * upper / w.beta, 2) - 1.0);
  const double estimate = prefactor * (2.0 / pi) * std::sqrt(2.0 / pi) * 2.0 / std::sqrt(y0);
  CHECK(tail == doctest::Approx(estimate).epsilon(0.01));
}

}  // TEST_SUITE
