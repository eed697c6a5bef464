#include "hor/markov_energy.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <queue>
#include <string>

#include "hor/energy.hpp"
#include "hor/special_functions.hpp"

namespace hor {
namespace {

// Number of whole units the staging battery can pass through:
// floor(eta' * L * C_M / C_P), snapped so exact-by-construction setups
// (e.g. C_M = C_P, eta' * L integral) land on the lattice.
double staging_cap_units(const SystemParams& p) {
  double r = p.eta_prime * p.L * p.C_M / p.C_P;
  double nearest = std::round(r);
  if (std::fabs(r - nearest) <= 1e-12 * std::max(1.0, std::fabs(r))) return nearest;
  return r;
}

}  // namespace

double prob_snr_below_threshold(const SystemParams& p, const ChannelGains& g) {
  return -std::expm1(-p.sigma2_D * p.gamma_th / (p.P_S * g.Omega_SD));
}

double prob_qpeh_eq(const SystemParams& p, const ChannelGains& g, long m) {
  if (m < 0) return 0.0;
  double r = p.C_P / (p.eta * p.P_S * p.L * g.Omega_SR);
  // exp(-m*r) - exp(-(m+1)*r), factored so deep tails keep relative accuracy
  // instead of cancelling to zero.
  return std::exp(-static_cast<double>(m) * r) * -std::expm1(-r);
}

double cdf_Z(const SystemParams& p, const ChannelGains& g, double x,
             bool covert) {
  if (x <= 0.0) return 0.0;
  double p_fs = covert ? p.P_R + p.P_Delta : p.P_R;
  double a = p.P_S * g.Omega_SR;
  double b = p.k * p_fs * g.Omega_RR;
  if (std::fabs(a - b) <= 1e-8 * std::max(a, b)) {
    return erlang2_cdf(x, 0.5 * (a + b));
  }
  double f = 1.0 - a / (a - b) * std::exp(-x / a) + b / (a - b) * std::exp(-x / b);
  return std::min(1.0, std::max(0.0, f));
}

double cdf_Z_mixed(const SystemParams& p, const ChannelGains& g, double x,
                   double covert_mix) {
  if (covert_mix <= 0.0) return cdf_Z(p, g, x, false);
  if (covert_mix >= 1.0) return cdf_Z(p, g, x, true);
  return (1.0 - covert_mix) * cdf_Z(p, g, x, false) +
         covert_mix * cdf_Z(p, g, x, true);
}

namespace {

// Survival function of Z; the point masses below are differences of this,
// which stays accurate when the CDF has already rounded to 1.
double sf_Z(const SystemParams& p, const ChannelGains& g, double x,
            bool covert) {
  if (x <= 0.0) return 1.0;
  double p_fs = covert ? p.P_R + p.P_Delta : p.P_R;
  double a = p.P_S * g.Omega_SR;
  double b = p.k * p_fs * g.Omega_RR;
  if (std::fabs(a - b) <= 1e-8 * std::max(a, b)) {
    double t = x / (0.5 * (a + b));
    return std::exp(-t) * (1.0 + t);
  }
  double s = a / (a - b) * std::exp(-x / a) - b / (a - b) * std::exp(-x / b);
  return std::min(1.0, std::max(0.0, s));
}

double sf_Z_mixed(const SystemParams& p, const ChannelGains& g, double x,
                  double covert_mix) {
  if (covert_mix <= 0.0) return sf_Z(p, g, x, false);
  if (covert_mix >= 1.0) return sf_Z(p, g, x, true);
  return (1.0 - covert_mix) * sf_Z(p, g, x, false) +
         covert_mix * sf_Z(p, g, x, true);
}

}  // namespace

double prob_qfs_minus_qc_eq(const SystemParams& p, const ChannelGains& g,
                            long d, double covert_mix) {
  long q_c = discretize_consume(p).q_fs_c;
  long s = d + q_c;  // units the staging battery must deliver
  if (s < 0) return 0.0;
  double cap = staging_cap_units(p);
  if (cap < s) return 0.0;
  double z_unit = p.C_P / (p.eta * p.rho * p.eta_prime * p.L);
  if (cap < s + 1) return sf_Z_mixed(p, g, s * z_unit, covert_mix);
  return std::max(0.0, sf_Z_mixed(p, g, s * z_unit, covert_mix) -
                           sf_Z_mixed(p, g, (s + 1) * z_unit, covert_mix));
}

double prob_qfs_minus_qc_geq(const SystemParams& p, const ChannelGains& g,
                             long d, double covert_mix) {
  long q_c = discretize_consume(p).q_fs_c;
  long s = d + q_c;
  if (s <= 0) return 1.0;
  if (staging_cap_units(p) < s) return 0.0;
  double z_unit = p.C_P / (p.eta * p.rho * p.eta_prime * p.L);
  return sf_Z_mixed(p, g, s * z_unit, covert_mix);
}

TransitionMatrix build_transition_matrix(const SystemParams& p,
                                         const ChannelGains& g,
                                         double covert_mix) {
  p.validate();
  ConsumeQuanta cq = discretize_consume(p);
  int n = p.L + 1;
  TransitionMatrix m;
  m.L = p.L;
  m.phi = cq.phi;
  m.q_fs_c = cq.q_fs_c;
  m.p.assign(static_cast<size_t>(n) * n, 0.0);

  double q_sd = prob_snr_below_threshold(p, g);
  double peh_unit = p.C_P / (p.eta * p.P_S * p.L);

  for (int i = 0; i < n; ++i) {
    bool relay_capable = i >= cq.phi;
    double row_sum = 0.0;
    for (int j = 0; j < p.L; ++j) {
      long d = j - i;
      double v;
      if (d < 0) {
        v = relay_capable
                ? q_sd * prob_qfs_minus_qc_eq(p, g, d, covert_mix)
                : 0.0;
      } else {
        double peh = prob_qpeh_eq(p, g, d);
        v = relay_capable
                ? (1.0 - q_sd) * peh +
                      q_sd * prob_qfs_minus_qc_eq(p, g, d, covert_mix)
                : peh;
      }
      m.at(i, j) = v;
      row_sum += v;
    }
    double peh_tail = std::exp(-(p.L - i) * peh_unit / g.Omega_SR);
    double top = relay_capable
                     ? (1.0 - q_sd) * peh_tail +
                           q_sd * prob_qfs_minus_qc_geq(p, g, p.L - i, covert_mix)
                     : peh_tail;
    double residual = 1.0 - row_sum;
    if (std::fabs(top - residual) > 1e-6) {
      throw ConfigError("transition matrix row " + std::to_string(i) +
                        " does not close: top-level entry " +
                        std::to_string(top) + " vs residual " +
                        std::to_string(residual));
    }
    m.at(i, p.L) = top;
  }
  return m;
}

bool is_irreducible(const TransitionMatrix& m) {
  int n = m.L + 1;
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        double edge = forward ? m(u, v) : m(v, u);
        if (edge > 0.0 && !seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) return false;
    return true;
  };
  return reach(true) && reach(false);
}

StationaryDistribution stationary_distribution(const TransitionMatrix& m) {
  if (!is_irreducible(m)) {
    throw ConfigError(
        "energy chain is reducible; review L, E_th, C_M and power settings");
  }
  int n = m.L + 1;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = m(j, i) - (i == j ? 1.0 : 0.0) + 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd x = a.partialPivLu().solve(b);

  double fixed_point_err = 0.0;
  for (int i = 0; i < n; ++i) {
    double xi_next = 0.0;
    for (int j = 0; j < n; ++j) xi_next += m(j, i) * x(j);
    fixed_point_err = std::max(fixed_point_err, std::fabs(xi_next - x(i)));
  }
  if (!(fixed_point_err <= 1e-8)) {
    throw ConfigError("stationary solve residual " +
                      std::to_string(fixed_point_err) + " exceeds 1e-8");
  }
  StationaryDistribution out;
  out.xi.resize(n);
  for (int i = 0; i < n; ++i) out.xi[i] = std::max(0.0, x(i));
  return out;
}

StationaryDistribution power_iteration(const TransitionMatrix& m, int steps) {
  int n = m.L + 1;
  std::vector<double> x(n, 1.0 / n), next(n);
  for (int s = 0; s < steps; ++s) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += m(j, i) * x[j];
      next[i] = v;
      total += v;
    }
    for (int i = 0; i < n; ++i) x[i] = next[i] / total;
  }
  return StationaryDistribution{std::move(x)};
}

double prob_energy_ok(const StationaryDistribution& xi, long phi) {
  double s = 0.0;
  for (size_t i = std::max<long>(phi, 0); i < xi.xi.size(); ++i) s += xi.xi[i];
  return s;
}

}  // namespace hor
