#ifndef HOR_MARKOV_ENERGY_HPP
#define HOR_MARKOV_ENERGY_HPP

#include <vector>

#include "hor/system_config.hpp"

namespace hor {

/// Row-stochastic (L+1)x(L+1) transition matrix over battery levels.
struct TransitionMatrix {
  int L = 0;
  long phi = 0;      // minimum level allowing relay mode
  long q_fs_c = 0;   // units consumed per relay block
  std::vector<double> p;  // row-major, (L+1)^2 entries

  double operator()(int i, int j) const { return p[static_cast<size_t>(i) * (L + 1) + j]; }
  double& at(int i, int j) { return p[static_cast<size_t>(i) * (L + 1) + j]; }
};

struct StationaryDistribution {
  std::vector<double> xi;
};

/// Pr(gamma_SD < gamma_th) = 1 - exp(-sigma2_D * gamma_th / (P_S * Omega_SD)).
double prob_snr_below_threshold(const SystemParams& p, const ChannelGains& g);

/// Pr(exactly m battery units harvested in a pure-harvesting block):
/// difference of the exponential CDF of g_SR at consecutive unit boundaries.
double prob_qpeh_eq(const SystemParams& p, const ChannelGains& g, long m);

/// CDF of Z = P_S*g_SR + k*P_FS*g_RR (sum of two independent exponentials);
/// falls back to the Erlang-2 form when the two rates coincide.
double cdf_Z(const SystemParams& p, const ChannelGains& g, double x,
             bool covert);

/// cdf_Z blended over the covert flag: (1-mix)*F_Z|no-covert + mix*F_Z|covert.
double cdf_Z_mixed(const SystemParams& p, const ChannelGains& g, double x,
                   double covert_mix);

/// Pr(q_FS - q_FS_C = d) for a relay block, C_M-gated; 0 for d < -q_FS_C.
double prob_qfs_minus_qc_eq(const SystemParams& p, const ChannelGains& g,
                            long d, double covert_mix);

/// Pr(q_FS - q_FS_C >= d), used to complete each row at the top level.
double prob_qfs_minus_qc_geq(const SystemParams& p, const ChannelGains& g,
                             long d, double covert_mix);

/// Assembles all transitions. covert_mix is the long-run fraction of relay
/// blocks carrying covert power (0.5 under equal priors); 0 or 1 reproduce
/// the pure cases. Throws ConfigError when a row's independently computed
/// top-level entry disagrees with the row-sum residual by more than 1e-6.
TransitionMatrix build_transition_matrix(const SystemParams& p,
                                         const ChannelGains& g,
                                         double covert_mix = 0.5);

/// True when every level is reachable from every other (strong connectivity
/// of the nonzero pattern).
bool is_irreducible(const TransitionMatrix& m);

/// Solves xi = M^T xi via the dense system (M^T - I + B) xi = b with B the
/// all-ones matrix; verifies the fixed-point residual (<= 1e-8) and
/// nonnegativity. Throws ConfigError for reducible chains.
StationaryDistribution stationary_distribution(const TransitionMatrix& m);

/// Repeated application of M^T from the uniform vector; independent
/// cross-check for the linear solve.
StationaryDistribution power_iteration(const TransitionMatrix& m, int steps);

/// Tail mass sum_{i>=phi} xi_i; phi = L+1 gives 0.
double prob_energy_ok(const StationaryDistribution& xi, long phi);

}  // namespace hor

#endif
