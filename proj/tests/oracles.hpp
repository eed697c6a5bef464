// Independent reference implementations used only by tests. Written against
// textbook definitions, deliberately separate from the library code paths.
#ifndef HOR_TESTS_ORACLES_HPP
#define HOR_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

inline long double kGamma = 0.5772156649015328606065120900824024L;

// Ei(x) for x > 0 by the ascending series, valid over the tested range in
// long double.
inline double ref_ei_positive(double x) {
  long double sum = 0.0L, term = 1.0L;
  for (int k = 1; k < 20000; ++k) {
    term *= static_cast<long double>(x) / k;
    long double add = term / k;
    sum += add;
    if (std::fabs(static_cast<double>(add)) <
        1e-20 * std::fabs(static_cast<double>(sum)) && k > 4)
      break;
  }
  return static_cast<double>(kGamma + std::log(static_cast<long double>(x)) +
                             sum);
}

// E1(t) for t > 0: series for small t, Lentz continued fraction otherwise.
inline double ref_e1(double t) {
  if (t <= 3.0) {
    long double sum = 0.0L, term = 1.0L;
    for (int k = 1; k < 500; ++k) {
      term *= -static_cast<long double>(t) / k;
      sum += term / k;
    }
    return static_cast<double>(-kGamma - std::log(static_cast<long double>(t)) -
                               sum);
  }
  long double b = t + 1.0L, c = 1e308L, d = 1.0L / b, h = d;
  for (int i = 1; i < 2000; ++i) {
    long double a = -static_cast<long double>(i) * i;
    b += 2.0L;
    d = 1.0L / (a * d + b);
    c = b + a / c;
    long double delta = c * d;
    h *= delta;
    if (std::fabs(static_cast<double>(delta) - 1.0) < 1e-19) break;
  }
  return static_cast<double>(std::exp(-static_cast<long double>(t)) * h);
}

inline double ref_ei(double x) {
  return x > 0.0 ? ref_ei_positive(x) : -ref_e1(-x);
}

inline double trapezoid(const std::function<double(double)>& f, double a,
                        double b, int n) {
  double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

// One-sample Kolmogorov-Smirnov statistic; `samples` need not be sorted.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  size_t n = samples.size();
  for (size_t i = 0; i < n; ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double total_variation(const std::vector<double>& a,
                              const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace oracles

#endif
