#include "hor/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hor {
namespace {

// Snap near-lattice ratios so that e.g. E_th = 0.6*C_P with L=25 lands on 15
// exactly despite rounding in the quotient.
double snap(double ratio) {
  double nearest = std::round(ratio);
  if (std::fabs(ratio - nearest) <= 1e-12 * std::max(1.0, std::fabs(ratio))) {
    return nearest;
  }
  return ratio;
}

long floor_units(double ratio) {
  return static_cast<long>(std::floor(snap(ratio)));
}

long ceil_units(double ratio) {
  return static_cast<long>(std::ceil(snap(ratio)));
}

}  // namespace

double harvest_peh(const SystemParams& p, double g_SR) {
  return p.eta * p.P_S * g_SR;
}

double harvest_fs(const SystemParams& p, double g_SR, double g_RR,
                  bool covert) {
  double p_fs = covert ? p.P_R + p.P_Delta : p.P_R;
  return p.eta * p.rho * (p.P_S * g_SR + p.k * p_fs * g_RR);
}

long discretize_charge_peh(const SystemParams& p, double e_peh) {
  if (e_peh < 0.0) throw std::domain_error("discretize_charge_peh: negative energy");
  return floor_units(e_peh / p.energy_unit());
}

long discretize_charge_fs(const SystemParams& p, double e_fs) {
  if (e_fs < 0.0) throw std::domain_error("discretize_charge_fs: negative energy");
  double absorbed = p.eta_prime * std::min(e_fs, p.C_M);
  return floor_units(absorbed / p.energy_unit());
}

ConsumeQuanta discretize_consume(const SystemParams& p) {
  long q = ceil_units(p.E_th / p.energy_unit());
  return ConsumeQuanta{q, q};
}

}  // namespace hor
