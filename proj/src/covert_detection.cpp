#include "hor/covert_detection.hpp"

#include <algorithm>
#include <cmath>

namespace hor {

CovertScenario make_scenario(const SystemParams& p, const ChannelGains& g,
                             double g_SD, double g_RD_hat) {
  CovertScenario s;
  s.params = p;
  s.Omega_RD = g.Omega_RD;
  s.g_SD = g_SD;
  s.g_RD_hat = g_RD_hat;
  s.beta = p.beta;
  return s;
}

double radiometer_statistic(const CovertScenario& s, double g_RD_tilde,
                            bool covert) {
  if (covert) return s.j1() + (s.params.P_R + s.params.P_Delta) * g_RD_tilde;
  return s.j0() + s.params.P_R * g_RD_tilde;
}

double p_false_alarm(const CovertScenario& s, double tau) {
  double j0 = s.j0();
  if (tau < j0) return 1.0;
  return std::exp((j0 - tau) / (s.beta * s.params.P_R * s.Omega_RD));
}

double p_missed_detection(const CovertScenario& s, double tau) {
  double j1 = s.j1();
  if (tau < j1) return 0.0;
  return 1.0 - std::exp((j1 - tau) / (s.beta * (s.params.P_R + s.params.P_Delta) *
                                      s.Omega_RD));
}

double p_detection_error(const CovertScenario& s, double tau) {
  return p_false_alarm(s, tau) + p_missed_detection(s, tau);
}

namespace {

// Channel-independent part of tau_k1_zero: the offset above P_S*g_SD+sigma_D^2
// at which the tau >= j1 branch of the error is stationary when g_RD_hat = 0.
double stationary_offset(const CovertScenario& s) {
  double p_r = s.params.P_R;
  double p_1 = p_r + s.params.P_Delta;
  return -(s.beta * p_r * p_1 * s.Omega_RD / s.params.P_Delta) *
         std::log(p_r / p_1);
}

}  // namespace

double tau_k1_zero(const CovertScenario& s) {
  return stationary_offset(s) + s.params.P_S * s.g_SD + s.params.sigma2_D;
}

double optimal_threshold(const CovertScenario& s) {
  return std::max(s.j1(), tau_k1_zero(s));
}

double min_detection_error(const CovertScenario& s) {
  double p_r = s.params.P_R;
  double p_1 = p_r + s.params.P_Delta;
  double denom0 = s.beta * p_r * s.Omega_RD;
  double denom1 = s.beta * p_1 * s.Omega_RD;
  // j1 - (P_S*g_SD + sigma_D^2) and the matching offset of tau_k1_zero; all
  // comparisons and exponents below use these differences, never the absolute
  // power levels.
  double a = stationary_offset(s);
  double j1_off = p_1 * s.g_RD_hat;
  if (j1_off >= a) {
    // tau* = j1; error reduces to the false-alarm term at the knee.
    return std::exp(-s.params.P_Delta * s.g_RD_hat / denom0);
  }
  double j0_off = p_r * s.g_RD_hat;
  return 1.0 + std::exp((j0_off - a) / denom0) - std::exp((j1_off - a) / denom1);
}

CovertMetrics covert_metrics(const CovertScenario& s) {
  CovertMetrics m;
  m.tau_star = optimal_threshold(s);
  m.p_fa = p_false_alarm(s, m.tau_star);
  m.p_md = p_missed_detection(s, m.tau_star);
  m.p_e = m.p_fa + m.p_md;
  m.p_e_star = min_detection_error(s);
  return m;
}

EmpiricalErrorCurve empirical_error_curve(const CovertScenario& s,
                                          const std::vector<double>& taus,
                                          std::size_t draws,
                                          std::uint64_t seed) {
  RngStream rng(seed);
  double mean_err = s.beta * s.Omega_RD;
  std::vector<double> t0(draws), t1(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    double g_tilde = rng.exponential(mean_err);
    t0[i] = radiometer_statistic(s, g_tilde, false);
    t1[i] = radiometer_statistic(s, g_tilde, true);
  }
  std::sort(t0.begin(), t0.end());
  std::sort(t1.begin(), t1.end());

  EmpiricalErrorCurve c;
  c.p_fa.reserve(taus.size());
  c.p_md.reserve(taus.size());
  c.p_e.reserve(taus.size());
  for (double tau : taus) {
    // False alarm: fraction of no-covert statistics above tau.
    auto above = t0.end() - std::upper_bound(t0.begin(), t0.end(), tau);
    double fa = static_cast<double>(above) / draws;
    // Missed detection: fraction of covert statistics at or below tau.
    auto below = std::upper_bound(t1.begin(), t1.end(), tau) - t1.begin();
    double md = static_cast<double>(below) / draws;
    c.p_fa.push_back(fa);
    c.p_md.push_back(md);
    c.p_e.push_back(fa + md);
  }
  return c;
}

}  // namespace hor
