#ifndef HOR_OUTAGE_ANALYTICS_HPP
#define HOR_OUTAGE_ANALYTICS_HPP

#include "hor/markov_energy.hpp"
#include "hor/system_config.hpp"

namespace hor {

/// CDF of the relay-path SINR (the DF min of the relay's receive SINR and the
/// destination's relay-link SINR). covert=true adds the covert stream: extra
/// self-interference at the relay and covert-as-interference at the
/// destination, with a hard cutoff F=1 at x >= P_R/P_Delta.
double cdf_Y(const SystemParams& p, const ChannelGains& g, double x,
             bool covert);

/// Closed-form CDF of the combined SINR without the covert stream, checked
/// against an independent convolution quadrature. `value` is the closed form
/// when the two agree within 1e-6, otherwise the quadrature result with
/// `diverged` set. The closed form degenerates when the exponential-integral
/// argument hits 0; then the quadrature result is used directly.
struct CheckedCdf {
  double value = 0.0;
  double closed_form = 0.0;
  double oracle = 0.0;
  bool diverged = false;
};

CheckedCdf cdf_gammaD_H0_checked(const SystemParams& p, const ChannelGains& g,
                                 double x);

/// Convenience accessor for the checked value.
double cdf_gammaD_H0(const SystemParams& p, const ChannelGains& g, double x);

/// CDF of the combined SINR with the covert stream, by adaptive quadrature of
/// the convolution over the direct-link SNR (absolute tolerance 1e-10); the
/// integrand's kink where the relay-path CDF saturates is split explicitly.
double cdf_gammaD_H1(const SystemParams& p, const ChannelGains& g, double x);

struct OutageReport {
  double top_fs = 0.0;
  double top_peh = 0.0;
  double top = 0.0;
  double q_sd = 0.0;
  double p_energy_ok = 0.0;
  double cdf_h0 = 0.0;  // F_{gammaD|H0} at 2^R_th - 1
  double cdf_h1 = 0.0;  // F_{gammaD|H1} at 2^R_th - 1
  bool diverged = false;
};

/// Outage while relaying: 1/2 * sum_{i>=phi} xi_i * [F_H0(x) + F_H1(x)] at
/// x = 2^R_th - 1, equal priors on the covert stream.
double top_fs(const SystemParams& p, const ChannelGains& g,
              const StationaryDistribution& xi, long phi);

/// Outage while only harvesting: q_SD * sum_{i<phi} xi_i plus the mass of
/// gamma_SD in (gamma_th, x] when the outage threshold exceeds gamma_th.
double top_peh(const SystemParams& p, const ChannelGains& g,
               const StationaryDistribution& xi, long phi);

OutageReport top_overall(const SystemParams& p, const ChannelGains& g,
                         const StationaryDistribution& xi, long phi);

/// Direct transmission only: q_SD plus the same above-threshold tail mass.
double top_no_relay(const SystemParams& p, const ChannelGains& g);

/// Pr(gamma_th < gamma_SD <= x), the PEH-mode outage contribution from blocks
/// whose direct link passed the SNR gate but missed the rate target.
double cdf_gammaSD_above_th(const SystemParams& p, const ChannelGains& g,
                            double x);

}  // namespace hor

#endif
