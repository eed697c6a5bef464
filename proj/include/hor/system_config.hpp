#ifndef HOR_SYSTEM_CONFIG_HPP
#define HOR_SYSTEM_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>

namespace hor {

/// Raised for invalid parameter values, unknown keys, or malformed config
/// input. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every scalar the model needs. Block duration is normalized to one time
/// unit, so watts and joules are interchangeable.
struct SystemParams {
  double P_S = 0.0;        // source transmit power [W]
  double sigma2_R = 0.0;   // AWGN power at the relay [W]
  double sigma2_D = 0.0;   // AWGN power at the destination [W]
  double C_P = 0.0;        // main battery capacity [J]
  double C_M = 0.0;        // staging battery capacity [J]
  double eta = 0.0;        // RF-to-DC conversion efficiency, (0,1)
  double eta_prime = 0.0;  // staging-to-main transfer coefficient, (0,1]
  double rho = 0.0;        // power-splitting factor, (0,1)
  double k = 0.0;          // residual self-interference coefficient, (0,1]
  int L = 0;               // battery discretization level
  double gamma_th = 0.0;   // SNR threshold for direct transmission
  double E_th = 0.0;       // residual-energy threshold [J]
  double R_th = 0.0;       // target rate [bits/s/Hz]
  double P_Delta = 0.0;    // covert transmit power [W]
  double P_R = 0.0;        // relay forwarding power [W]
  double beta = 0.0;       // channel-uncertainty degree, (0,1)
  double d_SD = 0.0, d_SR = 0.0, d_RD = 0.0, d_RR = 0.0;  // distances [m]
  double alpha = 0.0;      // path-loss exponent

  double energy_unit() const { return C_P / L; }
  double outage_snr() const;  // 2^R_th - 1

  /// Throws ConfigError when any invariant is violated (C_P >= E_th,
  /// P_R > P_Delta > 0, ranges of the unitless factors, positive
  /// distances/powers).
  void validate() const;
};

/// The default parameter setup: d_SD=15, d_SR=d_RD=8, d_RR=0.1 m, alpha=3,
/// sigma2=-60 dBm, R_th=1, gamma_th=1, P_S=-10 dBm, rho=0.5, k=1,
/// C_P=C_M=1e-6 J, eta=0.4, eta'=0.9, L=25, beta=0.5, E_th=P_R=0.6*C_P,
/// P_Delta=0.2*P_R.
SystemParams default_params();

/// Mean power gains per link, Omega = 1/(1 + d^alpha).
struct ChannelGains {
  double Omega_SD = 0.0;
  double Omega_SR = 0.0;
  double Omega_RD = 0.0;
  double Omega_RR = 0.0;
};

ChannelGains derive_gains(const SystemParams& p);

/// Per-block instantaneous power gains. g_RD is an independent draw with mean
/// Omega_RD used by the outage path; the covert path consumes only the
/// estimated/error split (g_RD_hat, g_RD_tilde) with means (1-beta)*Omega_RD
/// and beta*Omega_RD.
struct BlockChannels {
  double g_SD = 0.0;
  double g_SR = 0.0;
  double g_RR = 0.0;
  double g_RD = 0.0;
  double g_RD_hat = 0.0;
  double g_RD_tilde = 0.0;
};

/// Deterministic random stream: a fixed 64-bit generator with a fixed
/// uniform-to-exponential mapping, so identical seeds give bit-identical
/// sequences on any platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double exponential(double mean) { return -mean * std::log1p(-uniform01()); }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Draws one block worth of channels; order of draws is fixed (g_SD, g_SR,
/// g_RR, g_RD, g_RD_hat, g_RD_tilde) as part of the reproducibility contract.
BlockChannels sample_block(const ChannelGains& gains, double beta,
                           RngStream& rng);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Sets one SystemParams field by name. Values may carry a unit suffix:
/// "dBm" converts to watts; "W", "J", "m" are accepted and ignored (base
/// units). Throws ConfigError on unknown keys or unparsable values.
void apply_setting(SystemParams& p, const std::string& key,
                   const std::string& value);

/// Numeric-value overload; the value is taken as already in base units.
void apply_setting(SystemParams& p, const std::string& key, double value);

/// Reads flat key=value lines ('#' comments and blank lines skipped) on top
/// of `base`.
SystemParams load_params(std::istream& in, const SystemParams& base);

}  // namespace hor

#endif
