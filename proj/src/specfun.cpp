#include "sinhreg/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "sinhreg/errors.hpp"

namespace sinhreg {
namespace {

using std::numbers::pi;

void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(where) + ": non-finite argument");
  }
}

// Below this the alternating power series of J1 loses fewer than ~5 digits in
// long double; above it the Hankel expansion is accurate to a few ulp.
constexpr double kJ1SeriesLimit = 15.0;
constexpr double kI1SeriesLimit = 50.0;

long double j1_series(long double x) {
  const long double half = x / 2;
  const long double q = half * half;
  long double term = half;
  long double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= -q / static_cast<long double>((k + 1) * (k + 2));
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum) && k > 2) break;
  }
  return sum;
}

// Hankel expansion coefficients a_k(1) = prod_{i<=k} (4 - (2i-1)^2) / (k! 8^k).
// P and Q are summed until the terms stop decreasing (optimal truncation).
void hankel_pq(double x, double& p, double& q) {
  p = 1.0;
  q = 0.0;
  double a = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    a *= (4.0 - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    const double mag = std::fabs(a);
    if (mag > last || mag < 1e-18) break;
    last = mag;
    // k even: (-1)^(k/2) into P; k odd: (-1)^((k-1)/2) into Q.
    if (k % 2 == 0) {
      p += ((k / 2) % 2 == 0 ? a : -a);
    } else {
      q += (((k - 1) / 2) % 2 == 0 ? a : -a);
    }
  }
}

double i1_series(double x) {
  const double half = x / 2;
  const double q = half * half;
  double term = half;
  double sum = term;
  for (int k = 0; k < 500; ++k) {
    term *= q / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double floor = 0.0;  // rounding part of `error`; splitting cannot reduce it
  bool operator<(const Panel& other) const { return error - floor < other.error - other.floor; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  if (!std::isfinite(fc)) throw DomainError("integrate_adaptive: integrand is not finite");
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_k = std::fabs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    f1[i] = f(center - dx);
    f2[i] = f(center + dx);
    if (!std::isfinite(f1[i]) || !std::isfinite(f2[i])) {
      throw DomainError("integrate_adaptive: integrand is not finite");
    }
    const double s = f1[i] + f2[i];
    kronrod += kWgk[i] * s;
    abs_k += kWgk[i] * (std::fabs(f1[i]) + std::fabs(f2[i]));
    if (i % 2 == 1) gauss += kWg[i / 2] * s;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::fabs(fc - mean);
  for (std::size_t i = 0; i < 7; ++i) {
    asc += kWgk[i] * (std::fabs(f1[i] - mean) + std::fabs(f2[i] - mean));
  }
  const double result = kronrod * half;
  abs_k *= std::fabs(half);
  asc *= std::fabs(half);
  double err = std::fabs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double floor = 0.0;
  if (abs_k > std::numeric_limits<double>::min() / (50.0 * eps)) {
    floor = 50.0 * eps * abs_k;
    err = std::max(floor, err);
  }
  return {a, b, result, err, floor};
}

}  // namespace

double sin_pi(double x) {
  require_finite(x, "sin_pi");
  // r in [-1, 1]; the subtraction is exact for |x| < 2^52.
  double r = x - 2.0 * std::round(0.5 * x);
  const double sign = r < 0 ? -1.0 : 1.0;
  r = std::fabs(r);
  double s;
  if (r <= 0.25) {
    s = std::sin(pi * r);
  } else if (r <= 0.75) {
    s = std::cos(pi * (r - 0.5));
  } else {
    s = std::sin(pi * (1.0 - r));
  }
  return sign * s;
}

double sinc(double x) {
  require_finite(x, "sinc");
  if (std::fabs(x) < 1e-4) {
    const double u2 = (pi * x) * (pi * x);
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return sin_pi(x) / (pi * x);
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double ax = std::fabs(x);
  double value;
  if (ax <= kJ1SeriesLimit) {
    value = static_cast<double>(j1_series(static_cast<long double>(ax)));
  } else {
    double p;
    double q;
    hankel_pq(ax, p, q);
    // chi = x - 3 pi / 4, expanded so the phase is not rounded.
    const double s = std::sin(ax);
    const double c = std::cos(ax);
    const double cos_chi = (s - c) / std::numbers::sqrt2;
    const double sin_chi = -(s + c) / std::numbers::sqrt2;
    value = std::sqrt(2.0 / (pi * ax)) * (p * cos_chi - q * sin_chi);
  }
  return x < 0 ? -value : value;
}

double bessel_i1_scaled(double x) {
  require_finite(x, "bessel_i1_scaled");
  const double ax = std::fabs(x);
  double value;
  if (ax <= kI1SeriesLimit) {
    value = i1_series(ax) * std::exp(-ax);
  } else {
    // I1(x) e^{-x} ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(1) / x^k
    double sum = 1.0;
    double a = 1.0;
    for (int k = 1; k < 40; ++k) {
      a *= -(4.0 - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * ax);
      sum += a;
      if (std::fabs(a) < 1e-18) break;
    }
    value = sum / std::sqrt(2.0 * pi * ax);
  }
  return x < 0 ? -value : value;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  QuadratureOptions options;
  options.abs_tol = tol;
  return integrate_adaptive(f, a, b, options);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (!std::isfinite(a) || std::isnan(b)) {
    throw DomainError("integrate_adaptive: invalid limits");
  }
  if (!(options.abs_tol > 0.0) && !(options.rel_tol > 0.0)) {
    throw ConfigurationError("integrate_adaptive: tolerance must be positive");
  }
  if (!(a < b)) throw ConfigurationError("integrate_adaptive: requires a < b");

  std::function<double(double)> g = f;
  double lo = a;
  double hi = b;
  if (std::isinf(b)) {
    g = [&f, a](double t) {
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    lo = 0.0;
    hi = 1.0;
  }

  std::priority_queue<Panel> panels;
  Panel first = gk15(g, lo, hi);
  std::size_t evaluations = 15;
  double total = first.value;
  double total_err = first.error;
  double total_floor = first.floor;
  panels.push(first);
  // Panels too narrow to split are parked here; they still count.
  std::vector<Panel> frozen;

  auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::fabs(total)); };

  // Only the reducible part of the error has to meet the target; the
  // rounding floor is still reported.
  while (total_err - total_floor > target()) {
    if (panels.empty()) break;  // everything left is too narrow to split
    if (panels.size() + frozen.size() >= options.max_subintervals) {
      throw ConvergenceError("integrate_adaptive: subinterval budget exhausted", total, total_err);
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e3 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gk15(g, worst.a, mid);
    const Panel right = gk15(g, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_floor += left.floor + right.floor - worst.floor;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to avoid drift from the incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  for (const auto& p : frozen) {
    value += p.value;
    err += p.error;
  }
  return {value, err, evaluations};
}

}  // namespace sinhreg
