#include "hor/outage_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hor/special_functions.hpp"

namespace hor {

double cdf_Y(const SystemParams& p, const ChannelGains& g, double x,
             bool covert) {
  if (x <= 0.0) return 0.0;
  double b = p.P_S * g.Omega_SR;
  double relay_rate = p.sigma2_R / ((1.0 - p.rho) * p.P_S * g.Omega_SR);
  if (!covert) {
    double expo = (relay_rate + p.sigma2_D / (p.P_R * g.Omega_RD)) * x;
    return 1.0 - b * std::exp(-expo) / (b + p.k * p.P_R * g.Omega_RR * x);
  }
  if (x >= p.P_R / p.P_Delta) return 1.0;
  double expo =
      (relay_rate + p.sigma2_D / ((p.P_R - p.P_Delta * x) * g.Omega_RD)) * x;
  return 1.0 -
         b * std::exp(-expo) /
             (b + p.k * (p.P_R + p.P_Delta) * g.Omega_RR * x);
}

namespace {

// Convolution of the direct-link SNR density with the relay-path CDF over the
// SNR-gated interval [0, min(x, gamma_th)].
double convolution_oracle(const SystemParams& p, const ChannelGains& g,
                          double x, bool covert) {
  double u = std::min(x, p.gamma_th);
  if (u <= 0.0) return 0.0;
  double lambda = p.sigma2_D / (p.P_S * g.Omega_SD);
  auto fun = [&](double y) {
    return lambda * std::exp(-lambda * y) * cdf_Y(p, g, x - y, covert);
  };
  // Split where the integrand stops being smooth: the covert-stream CDF
  // saturates at x - y = P_R/P_Delta, and cdf_Y vanishes past y = x.
  std::vector<double> cuts = {0.0, u};
  if (covert) {
    double knee = x - p.P_R / p.P_Delta;
    if (knee > 0.0 && knee < u) cuts.push_back(knee);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += quad_gk(fun, cuts[i], cuts[i + 1], 1e-10, 0.0).value;
  }
  return total;
}

}  // namespace

CheckedCdf cdf_gammaD_H0_checked(const SystemParams& p, const ChannelGains& g,
                                 double x) {
  CheckedCdf out;
  if (x <= 0.0) return out;
  out.oracle = convolution_oracle(p, g, x, false);

  double u = std::min(x, p.gamma_th);
  double lambda = p.sigma2_D / (p.P_S * g.Omega_SD);
  double b = p.P_S * g.Omega_SR;
  double d = p.k * p.P_R * g.Omega_RR;
  double c = p.sigma2_R / ((1.0 - p.rho) * p.P_S * g.Omega_SR) +
             p.sigma2_D / (p.P_R * g.Omega_RD);
  double v1 = p.sigma2_D * g.Omega_SR / (d * g.Omega_SD);
  double v2 = (lambda - c) / d;
  double v3 = v2 * (b + d * x);
  double v4 = v2 * (b + d * (x - u));
  bool closed_ok = v3 != 0.0 && v4 != 0.0;
  if (closed_ok) {
    try {
      out.closed_form = -std::expm1(-lambda * u) -
                        v1 * (exp_integral_ei(v3) - exp_integral_ei(v4)) *
                            std::exp(-lambda * x - v2 * b);
    } catch (const std::domain_error&) {
      closed_ok = false;
    }
  }
  if (!closed_ok) {
    out.closed_form = out.oracle;
    out.value = out.oracle;
    out.diverged = true;
    return out;
  }
  if (std::fabs(out.closed_form - out.oracle) > 1e-6) {
    out.value = out.oracle;
    out.diverged = true;
  } else {
    out.value = out.closed_form;
  }
  return out;
}

double cdf_gammaD_H0(const SystemParams& p, const ChannelGains& g, double x) {
  return cdf_gammaD_H0_checked(p, g, x).value;
}

double cdf_gammaD_H1(const SystemParams& p, const ChannelGains& g, double x) {
  if (x <= 0.0) return 0.0;
  return convolution_oracle(p, g, x, true);
}

double cdf_gammaSD_above_th(const SystemParams& p, const ChannelGains& g,
                            double x) {
  if (x <= p.gamma_th) return 0.0;
  double lambda = p.sigma2_D / (p.P_S * g.Omega_SD);
  return std::exp(-lambda * p.gamma_th) - std::exp(-lambda * x);
}

double top_fs(const SystemParams& p, const ChannelGains& g,
              const StationaryDistribution& xi, long phi) {
  double x = p.outage_snr();
  double tail = prob_energy_ok(xi, phi);
  if (tail <= 0.0) return 0.0;
  return 0.5 * tail * (cdf_gammaD_H0(p, g, x) + cdf_gammaD_H1(p, g, x));
}

double top_peh(const SystemParams& p, const ChannelGains& g,
               const StationaryDistribution& xi, long phi) {
  double q_sd = prob_snr_below_threshold(p, g);
  double low = 1.0 - prob_energy_ok(xi, phi);
  return q_sd * low + cdf_gammaSD_above_th(p, g, p.outage_snr());
}

OutageReport top_overall(const SystemParams& p, const ChannelGains& g,
                         const StationaryDistribution& xi, long phi) {
  OutageReport r;
  double x = p.outage_snr();
  r.q_sd = prob_snr_below_threshold(p, g);
  r.p_energy_ok = prob_energy_ok(xi, phi);
  CheckedCdf h0 = cdf_gammaD_H0_checked(p, g, x);
  r.cdf_h0 = h0.value;
  r.diverged = h0.diverged;
  r.cdf_h1 = cdf_gammaD_H1(p, g, x);
  r.top_fs = 0.5 * r.p_energy_ok * (r.cdf_h0 + r.cdf_h1);
  r.top_peh = r.q_sd * (1.0 - r.p_energy_ok) + cdf_gammaSD_above_th(p, g, x);
  r.top = r.top_fs + r.top_peh;
  return r;
}

double top_no_relay(const SystemParams& p, const ChannelGains& g) {
  return prob_snr_below_threshold(p, g) +
         cdf_gammaSD_above_th(p, g, p.outage_snr());
}

}  // namespace hor
