#include "hor/system_config.hpp"

#include <cmath>
#include <istream>
#include <sstream>

namespace hor {

double SystemParams::outage_snr() const { return std::exp2(R_th) - 1.0; }

void SystemParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid parameters: ") + what);
  };
  require(P_S > 0.0, "P_S must be positive");
  require(sigma2_R > 0.0 && sigma2_D > 0.0, "noise powers must be positive");
  require(C_P > 0.0 && C_M >= 0.0, "battery capacities must be nonnegative (C_P > 0)");
  require(eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  require(eta_prime > 0.0 && eta_prime <= 1.0, "eta_prime must lie in (0,1]");
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
  require(k > 0.0 && k <= 1.0, "k must lie in (0,1]");
  require(L >= 1, "L must be a positive integer");
  require(gamma_th >= 0.0, "gamma_th must be nonnegative");
  require(R_th > 0.0, "R_th must be positive");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  require(d_SD > 0.0 && d_SR > 0.0 && d_RD > 0.0 && d_RR > 0.0,
          "distances must be positive");
  require(alpha > 0.0, "alpha must be positive");
  require(C_P >= E_th, "C_P must be at least E_th");
  require(E_th > 0.0, "E_th must be positive");
  require(P_R > P_Delta && P_Delta > 0.0, "P_R > P_Delta > 0 is required");
}

SystemParams default_params() {
  SystemParams p;
  p.d_SD = 15.0;
  p.d_SR = 8.0;
  p.d_RD = 8.0;
  p.d_RR = 0.1;
  p.alpha = 3.0;
  p.sigma2_R = 1e-9;  // -60 dBm
  p.sigma2_D = 1e-9;
  p.R_th = 1.0;
  p.gamma_th = 1.0;
  p.P_S = 1e-4;  // -10 dBm
  p.rho = 0.5;
  p.k = 1.0;
  p.C_P = 1e-6;
  p.C_M = 1e-6;
  p.eta = 0.4;
  p.eta_prime = 0.9;
  p.L = 25;
  p.beta = 0.5;
  p.E_th = 0.6 * p.C_P;
  p.P_R = p.E_th;
  p.P_Delta = 0.2 * p.P_R;
  return p;
}

ChannelGains derive_gains(const SystemParams& p) {
  auto gain = [&](double d) { return 1.0 / (1.0 + std::pow(d, p.alpha)); };
  ChannelGains g;
  g.Omega_SD = gain(p.d_SD);
  g.Omega_SR = gain(p.d_SR);
  g.Omega_RD = gain(p.d_RD);
  g.Omega_RR = gain(p.d_RR);
  return g;
}

BlockChannels sample_block(const ChannelGains& gains, double beta,
                           RngStream& rng) {
  BlockChannels c;
  c.g_SD = rng.exponential(gains.Omega_SD);
  c.g_SR = rng.exponential(gains.Omega_SR);
  c.g_RR = rng.exponential(gains.Omega_RR);
  c.g_RD = rng.exponential(gains.Omega_RD);
  c.g_RD_hat = rng.exponential((1.0 - beta) * gains.Omega_RD);
  c.g_RD_tilde = rng.exponential(beta * gains.Omega_RD);
  return c;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

namespace {

double parse_value(const std::string& key, const std::string& raw) {
  std::string text = raw;
  bool dbm = false;
  auto strip_suffix = [&](const char* sfx) {
    size_t n = std::string(sfx).size();
    if (text.size() > n &&
        text.compare(text.size() - n, n, sfx) == 0) {
      text.erase(text.size() - n);
      return true;
    }
    return false;
  };
  if (strip_suffix("dBm") || strip_suffix("dbm")) {
    dbm = true;
  } else {
    strip_suffix("W") || strip_suffix("J") || strip_suffix("m");
  }
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument(text);
    return dbm ? dbm_to_watt(v) : v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse value '" + raw + "' for key '" + key + "'");
  }
}

}  // namespace

void apply_setting(SystemParams& p, const std::string& key,
                   const std::string& value) {
  apply_setting(p, key, parse_value(key, value));
}

void apply_setting(SystemParams& p, const std::string& key, double v) {
  if (key == "P_S") p.P_S = v;
  else if (key == "sigma2_R") p.sigma2_R = v;
  else if (key == "sigma2_D") p.sigma2_D = v;
  else if (key == "C_P") p.C_P = v;
  else if (key == "C_M") p.C_M = v;
  else if (key == "eta") p.eta = v;
  else if (key == "eta_prime") p.eta_prime = v;
  else if (key == "rho") p.rho = v;
  else if (key == "k") p.k = v;
  else if (key == "L") p.L = static_cast<int>(v);
  else if (key == "gamma_th") p.gamma_th = v;
  else if (key == "E_th") p.E_th = v;
  else if (key == "R_th") p.R_th = v;
  else if (key == "P_Delta") p.P_Delta = v;
  else if (key == "P_R") p.P_R = v;
  else if (key == "beta") p.beta = v;
  else if (key == "d_SD") p.d_SD = v;
  else if (key == "d_SR") p.d_SR = v;
  else if (key == "d_RD") p.d_RD = v;
  else if (key == "d_RR") p.d_RR = v;
  else if (key == "alpha") p.alpha = v;
  else throw ConfigError("unknown parameter key '" + key + "'");
}

SystemParams load_params(std::istream& in, const SystemParams& base) {
  SystemParams p = base;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r\n");
    line = line.substr(first, last - first + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    size_t vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);
    apply_setting(p, key, value);
  }
  return p;
}

}  // namespace hor
