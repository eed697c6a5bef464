#ifndef HOR_SPECIAL_FUNCTIONS_HPP
#define HOR_SPECIAL_FUNCTIONS_HPP

#include <functional>
#include <stdexcept>

namespace hor {

/// Result of an adaptive quadrature: integral value, an upper bound on the
/// absolute error for smooth integrands, and the number of panels evaluated.
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Thrown when the adaptive driver hits the panel cap; carries the best
/// estimate obtained so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadratureResult best)
      : std::runtime_error(msg), best_estimate(best) {}
  QuadratureResult best_estimate;
};

/// Cauchy principal value exponential integral Ei(x); equals -E1(-x) for
/// negative arguments. Relative error below 1e-12 for |x| in [1e-8, 700].
/// Throws std::domain_error at x = 0 (logarithmic singularity). Overflows to
/// +infinity for x beyond roughly 716.
double exp_integral_ei(double x);

/// CDF of the sum of two i.i.d. exponentials with mean theta:
///   1 - exp(-x/theta) * (1 + x/theta)  for x > 0, else 0.
/// Throws std::domain_error for theta <= 0.
double erlang2_cdf(double x, double theta);

/// Adaptive bisection quadrature with the Gauss7-Kronrod15 pair.
/// Terminates once the accumulated error estimate drops below
/// max(abs_tol, rel_tol * |value|); throws QuadratureError past the panel cap.
QuadratureResult quad_gk(const std::function<double(double)>& f, double a,
                         double b, double abs_tol = 1e-10,
                         double rel_tol = 1e-10, int max_subdivisions = 200);

}  // namespace hor

#endif
