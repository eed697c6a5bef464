#ifndef HOR_SIMULATOR_HPP
#define HOR_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hor/system_config.hpp"

namespace hor {

enum class Mode { kPEH, kFS };
enum class Verdict { kD0, kD1, kNotTested };

/// How a block that wants to relay but lacks energy is scored: as a failed
/// transmission (the analytic model's reading) or excluded from the outage
/// denominator.
enum class OutageAccounting { kChargingIsOutage, kAttemptedOnly };

struct SimConfig {
  SystemParams params;
  std::uint64_t blocks = 0;
  std::uint64_t seed = 1;
  bool record_trace = false;
  double covert_prior = 0.5;
  OutageAccounting accounting = OutageAccounting::kChargingIsOutage;
  /// When set, the detector uses this fixed threshold instead of the
  /// per-block optimal one.
  std::optional<double> forced_tau;
};

struct SimBlock {
  std::uint64_t index = 0;
  Mode mode = Mode::kPEH;
  int level_before = 0;
  int level_after = 0;
  bool covert = false;
  Verdict verdict = Verdict::kNotTested;
  bool outage = false;
  double gamma_D = 0.0;
};

struct SimSummary {
  std::uint64_t blocks = 0;
  std::uint64_t fs_blocks = 0;
  std::uint64_t fs_h0_blocks = 0;
  std::uint64_t fs_h1_blocks = 0;
  std::vector<double> empirical_xi;          // level occupancy at block start
  std::vector<std::uint64_t> level_counts;   // same, raw
  std::vector<std::uint64_t> transition_counts;  // (L+1)x(L+1) row-major
  double empirical_top = 0.0;
  double empirical_top_fs = 0.0;   // FS outages / denominator
  double empirical_top_peh = 0.0;  // PEH outages / denominator
  double empirical_p_fa = 0.0;     // Pr(D1 | FS, no covert stream)
  double empirical_p_md = 0.0;     // Pr(D0 | FS, covert stream)
  double empirical_p_e = 0.0;
  double energy_ok_fraction = 0.0;

  std::uint64_t transitions(int L, int i, int j) const {
    return transition_counts[static_cast<std::size_t>(i) * (L + 1) + j];
  }
};

/// Runs the protocol block by block from an empty battery. Deterministic for
/// a fixed config. When record_trace is set, `trace` receives one entry per
/// block.
SimSummary run(const SimConfig& cfg, std::vector<SimBlock>* trace = nullptr);

/// Conditional detection frequencies from a finished run; throws ConfigError
/// when fewer than 1000 relay blocks were observed.
struct CovertFrequencies {
  double p_fa = 0.0;
  double p_md = 0.0;
  double p_e = 0.0;
};

CovertFrequencies empirical_covert_metrics(const SimSummary& s);

}  // namespace hor

#endif
