#ifndef HOR_SWEEP_HPP
#define HOR_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hor/system_config.hpp"

namespace hor {

/// Named parameter couplings applied after every override: E_th = 0.6*C_P
/// ("eth"), P_R = E_th ("pr"), P_Delta = 0.2*P_R ("pdelta"). A sweep over a
/// bound parameter must release the matching binding or configuration fails.
void apply_bindings(SystemParams& p, const std::vector<std::string>& released);

/// Binding that pins a parameter key, if any.
std::optional<std::string> binding_for_key(const std::string& key);

enum class SweepKind { kOutage, kCovert, kStationary };

struct SweepSpec {
  std::string name;
  SweepKind kind = SweepKind::kOutage;
  std::string target;        // swept parameter key; tau grid for covert kind
  std::vector<double> grid;  // strictly monotone
  std::string family;        // optional second parameter
  std::vector<double> family_values;
  std::vector<std::string> released;
  std::uint64_t blocks_per_point = 200000;
  std::uint64_t seed_base = 0x486f52;
  SystemParams base;
  // Fixed per-block channel draws for the covert kind.
  double covert_g_SD = 0.0;
  double covert_g_RD_hat = 0.0;
};

struct SweepRow {
  double family_value = 0.0;  // NaN when no family parameter
  double target_value = 0.0;
  double analytic = 0.0;   // top (outage), p_e (covert), xi (stationary)
  double empirical = 0.0;
  double gap = 0.0;
  double top_fs = 0.0;
  double top_peh = 0.0;
  double no_relay = 0.0;
  bool diverged = false;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  double max_gap = 0.0;
  bool any_diverged = false;
  // Covert kind scalars.
  double tau_star = 0.0;
  double p_e_star = 0.0;
};

/// Builds the parameter set for one sweep point: base params, family and
/// target overrides, bindings re-applied. Throws ConfigError when the target
/// or family is bound and the binding was not released.
SystemParams point_params(const SweepSpec& spec, double family_value,
                          double target_value);

/// Evaluates analytics and the block simulator at every grid point. Points
/// run concurrently; row order follows the grid.
SweepResult run_sweep(const SweepSpec& spec);

/// Sweep encodings of the reference scenarios fig2..fig12; throws ConfigError
/// for unknown names, listing the valid ones.
SweepSpec figure_preset(const std::string& name);

std::vector<std::string> figure_preset_names();

/// CSV with header row; with_meta prepends '#' comment lines identifying the
/// sweep and seed.
void write_csv(std::ostream& out, const SweepResult& result, bool with_meta);

}  // namespace hor

#endif
