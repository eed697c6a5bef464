#ifndef HOR_ENERGY_HPP
#define HOR_ENERGY_HPP

#include "hor/system_config.hpp"

namespace hor {

/// Energy harvested in a pure-harvesting block: eta * P_S * g_SR [J].
double harvest_peh(const SystemParams& p, double g_SR);

/// Energy captured while relaying: eta * rho * (P_S*g_SR + k*P_FS*g_RR) with
/// P_FS = P_R (covert=false) or P_R + P_Delta (covert=true).
double harvest_fs(const SystemParams& p, double g_SR, double g_RR, bool covert);

/// Number of whole battery units (C_P/L each) a harvested amount fills.
/// Pure quantizer: no clamping to L here; ratios within 1e-12 relative of a
/// lattice point are snapped before flooring.
long discretize_charge_peh(const SystemParams& p, double e_peh);

/// Same, for relay-mode harvests: the staging battery caps the transfer at
/// C_M and the transfer loses a factor eta', i.e.
/// floor(eta' * min(E_fs, C_M) / (C_P/L)).
long discretize_charge_fs(const SystemParams& p, double e_fs);

/// Units drained per relaying block and the minimum level required to enter
/// relaying; both equal ceil(E_th / (C_P/L)).
struct ConsumeQuanta {
  long q_fs_c = 0;  // units consumed per relaying block
  long phi = 0;     // minimum level satisfying the energy requirement
};

ConsumeQuanta discretize_consume(const SystemParams& p);

}  // namespace hor

#endif
