#include "hor/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hor {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// Ei(x) = gamma + ln(x) + sum x^n / (n * n!), x > 0. All terms positive, so
// no cancellation; long double accumulation keeps the tail below 1e-13
// relative up to the asymptotic switchover.
double ei_series_positive(double x) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int n = 1; n < 500; ++n) {
    term *= static_cast<long double>(x) / n;
    long double contrib = term / n;
    sum += contrib;
    if (contrib < 1e-19L * std::fabs(sum) && n > 4) break;
  }
  return static_cast<double>(kEulerGamma + std::log(static_cast<long double>(x)) + sum);
}

// Ei(x) ~ (e^x / x) * sum k! / x^k, truncated at the smallest term. Only used
// for x large enough that the optimal truncation error is below 1e-15.
double ei_asymptotic(double x) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int k = 1; k < 400; ++k) {
    long double next = term * k / x;
    if (next >= term) break;  // smallest term reached
    term = next;
    sum += term;
    if (term < 1e-19L * sum) break;
  }
  double front = std::exp(x) / x;  // may overflow to +inf for x > ~709
  return static_cast<double>(front * sum);
}

// E1(t) = -gamma - ln(t) + sum (-1)^{n+1} t^n / (n * n!), 0 < t <= 6.
double e1_series(double t) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int n = 1; n < 500; ++n) {
    term *= -static_cast<long double>(t) / n;
    long double contrib = -term / n;  // (-1)^{n+1} t^n / (n n!)
    sum += contrib;
    if (std::fabs(term / n) < 1e-21L && n > 4) break;
  }
  return static_cast<double>(-kEulerGamma - std::log(static_cast<long double>(t)) + sum);
}

// E1(t) = e^{-t} * CF via the modified Lentz algorithm, t > 6.
double e1_continued_fraction(double t) {
  const double tiny = 1e-300;
  double b = t + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 200; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-t) * h;
}

}  // namespace

double exp_integral_ei(double x) {
  if (x == 0.0 || !std::isfinite(x)) {
    if (std::isinf(x)) return x > 0 ? x : 0.0;
    throw std::domain_error("exp_integral_ei: argument must be finite and nonzero");
  }
  if (x > 0.0) {
    // Power series stays accurate well past the textbook switchover; the
    // asymptotic tail only reaches 1e-15 relative accuracy from ~40 upward.
    return x < 44.0 ? ei_series_positive(x) : ei_asymptotic(x);
  }
  double t = -x;
  return t <= 6.0 ? -e1_series(t) : -e1_continued_fraction(t);
}

double erlang2_cdf(double x, double theta) {
  if (theta <= 0.0 || !std::isfinite(theta)) {
    throw std::domain_error("erlang2_cdf: theta must be positive");
  }
  if (x <= 0.0) return 0.0;
  double r = x / theta;
  // 1 - e^{-r}(1 + r), computed via expm1 for small r.
  if (r < 1e-3) {
    return -std::expm1(-r) - r * std::exp(-r);
  }
  return 1.0 - std::exp(-r) * (1.0 + r);
}

namespace {

// G7-K15 pair, QUADPACK tabulation. Positive abscissae of the 15-point
// Kronrod rule (index 7 is the center), matching Kronrod weights, and the
// weights of the embedded 7-point Gauss rule (applied at kXgk[1],[3],[5] and
// the center).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  const double fc = f(center);
  fv[14] = fc;
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(center - half * kXgk[j]);
    fv[j + 7] = f(center + half * kXgk[j]);
  }
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    double pair_sum = fv[j] + fv[j + 7];
    resk += kWgk[j] * pair_sum;
    resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[j + 7]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair_sum;
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[j + 7] - reskh));
  }
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  return Panel{a, b, resk * half, err};
}

}  // namespace

QuadratureResult quad_gk(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol,
                         int max_subdivisions) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("quad_gk: requires finite a <= b");
  }
  std::priority_queue<Panel> panels;
  Panel first = evaluate_panel(f, a, b);
  double total = first.value;
  double total_err = first.err;
  panels.push(first);
  int count = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (count >= max_subdivisions) {
      throw QuadratureError("quad_gk: panel cap reached before convergence",
                            QuadratureResult{total, total_err, count});
    }
    Panel worst = panels.top();
    panels.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval no longer splittable in double precision.
      panels.push(worst);
      break;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  return QuadratureResult{total, total_err, count};
}

}  // namespace hor
