#ifndef HOR_COVERT_DETECTION_HPP
#define HOR_COVERT_DETECTION_HPP

#include <cstdint>
#include <vector>

#include "hor/system_config.hpp"

namespace hor {

/// One relaying block as the destination's detector sees it: the direct-link
/// gain, the estimated relay-link gain, and the estimation-uncertainty degree.
/// Detection randomness comes solely from the unknown estimation error.
struct CovertScenario {
  SystemParams params;
  double Omega_RD = 0.0;  // mean gain of the relay-destination link
  double g_SD = 0.0;      // |h_SD|^2
  double g_RD_hat = 0.0;  // estimated part of |h_RD|^2
  double beta = 0.0;      // fraction of Omega_RD left in the estimation error

  /// Known part of the received power without / with the covert stream.
  double j0() const {
    return params.P_S * g_SD + params.P_R * g_RD_hat + params.sigma2_D;
  }
  double j1() const {
    return params.P_S * g_SD + (params.P_R + params.P_Delta) * g_RD_hat +
           params.sigma2_D;
  }
};

CovertScenario make_scenario(const SystemParams& p, const ChannelGains& g,
                             double g_SD, double g_RD_hat);

struct CovertMetrics {
  double p_fa = 0.0;
  double p_md = 0.0;
  double p_e = 0.0;
  double tau_star = 0.0;
  double p_e_star = 0.0;
};

/// Average received power at the detector in the infinite-blocklength limit:
/// j0 + P_R*g_RD_tilde without the covert stream, j1 + (P_R+P_Delta)*g_RD_tilde
/// with it.
double radiometer_statistic(const CovertScenario& s, double g_RD_tilde,
                            bool covert);

/// Pr(statistic > tau | no covert stream): exp((j0-tau)/(beta*P_R*Omega_RD))
/// for tau >= j0, else 1.
double p_false_alarm(const CovertScenario& s, double tau);

/// Pr(statistic <= tau | covert stream):
/// 1 - exp((j1-tau)/(beta*(P_R+P_Delta)*Omega_RD)) for tau >= j1, else 0.
double p_missed_detection(const CovertScenario& s, double tau);

/// p_false_alarm + p_missed_detection; continuous, piecewise smooth with
/// knees at j0 and j1.
double p_detection_error(const CovertScenario& s, double tau);

/// The stationary point of the tau >= j1 branch with the channel-independent
/// offset only: -(beta*P_R*(P_R+P_Delta)*Omega_RD/P_Delta)*ln(P_R/(P_R+P_Delta))
/// + P_S*g_SD + sigma_D^2.
double tau_k1_zero(const CovertScenario& s);

/// tau* = max of j1 and tau_k1_zero.
double optimal_threshold(const CovertScenario& s);

/// Detection error at tau*. Evaluated from power differences only
/// (j0-j1 = -P_Delta*g_RD_hat etc.), so the result carries no P_S or g_SD
/// dependence even in the last bits.
double min_detection_error(const CovertScenario& s);

/// Full metric set at the optimal threshold.
CovertMetrics covert_metrics(const CovertScenario& s);

/// Empirical (p_fa, p_md) per tau from `draws` realizations of the estimation
/// error, exponential with mean beta*Omega_RD; used to validate the closed
/// forms.
struct EmpiricalErrorCurve {
  std::vector<double> p_fa;
  std::vector<double> p_md;
  std::vector<double> p_e;
};

EmpiricalErrorCurve empirical_error_curve(const CovertScenario& s,
                                          const std::vector<double>& taus,
                                          std::size_t draws,
                                          std::uint64_t seed);

}  // namespace hor

#endif
