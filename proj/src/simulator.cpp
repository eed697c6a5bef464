#include "hor/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "hor/covert_detection.hpp"
#include "hor/energy.hpp"

namespace hor {

SimSummary run(const SimConfig& cfg, std::vector<SimBlock>* trace) {
  const SystemParams& p = cfg.params;
  p.validate();
  if (cfg.blocks < 1) throw ConfigError("simulator needs at least one block");
  if (cfg.covert_prior < 0.0 || cfg.covert_prior > 1.0) {
    throw ConfigError("covert_prior must lie in [0,1]");
  }
  ChannelGains gains = derive_gains(p);
  ConsumeQuanta cq = discretize_consume(p);
  int n = p.L + 1;
  double x_out = p.outage_snr();

  RngStream rng(cfg.seed);
  SimSummary s;
  s.blocks = cfg.blocks;
  s.level_counts.assign(n, 0);
  s.transition_counts.assign(static_cast<std::size_t>(n) * n, 0);
  if (trace) {
    trace->clear();
    trace->reserve(cfg.record_trace ? cfg.blocks : 0);
  }

  std::uint64_t outages = 0, fs_outages = 0, peh_outages = 0;
  std::uint64_t attempted = 0;  // blocks where a transmission happened
  std::uint64_t false_alarms = 0, missed = 0;
  std::uint64_t energy_ok = 0;

  int level = 0;  // battery starts empty
  for (std::uint64_t g = 0; g < cfg.blocks; ++g) {
    s.level_counts[level]++;
    if (level >= cq.phi) energy_ok++;

    BlockChannels ch = sample_block(gains, p.beta, rng);
    double gamma_sd = p.P_S * ch.g_SD / p.sigma2_D;

    SimBlock blk;
    blk.index = g;
    blk.level_before = level;

    bool relay = gamma_sd < p.gamma_th && level >= cq.phi;
    if (!relay) {
      blk.mode = Mode::kPEH;
      if (gamma_sd >= p.gamma_th) {
        // Direct transmission; outage only if the rate target sits above the
        // SNR gate.
        attempted++;
        blk.gamma_D = gamma_sd;
        blk.outage = gamma_sd < x_out;
      } else {
        // Wanted to relay but the battery is low: the block's transmission
        // fails while the relay only charges.
        blk.outage = cfg.accounting == OutageAccounting::kChargingIsOutage;
        if (cfg.accounting == OutageAccounting::kChargingIsOutage) attempted++;
        blk.gamma_D = gamma_sd;
      }
      if (blk.outage) {
        outages++;
        peh_outages++;
      }
      long q = discretize_charge_peh(p, harvest_peh(p, ch.g_SR));
      level = static_cast<int>(std::min<long>(level + q, p.L));
    } else {
      blk.mode = Mode::kFS;
      blk.covert = rng.bernoulli(cfg.covert_prior);
      s.fs_blocks++;
      if (blk.covert) s.fs_h1_blocks++; else s.fs_h0_blocks++;
      attempted++;

      double relay_snr, dest_snr;
      if (!blk.covert) {
        relay_snr = (1.0 - p.rho) * p.P_S * ch.g_SR /
                    ((1.0 - p.rho) * p.k * p.P_R * ch.g_RR + p.sigma2_R);
        dest_snr = p.P_R * ch.g_RD / p.sigma2_D;
      } else {
        relay_snr =
            (1.0 - p.rho) * p.P_S * ch.g_SR /
            ((1.0 - p.rho) * p.k * (p.P_R + p.P_Delta) * ch.g_RR + p.sigma2_R);
        dest_snr = p.P_R * ch.g_RD / (p.P_Delta * ch.g_RD + p.sigma2_D);
      }
      blk.gamma_D = gamma_sd + std::min(relay_snr, dest_snr);
      blk.outage = std::log2(1.0 + blk.gamma_D) < p.R_th;
      if (blk.outage) {
        outages++;
        fs_outages++;
      }

      CovertScenario sc = make_scenario(p, gains, ch.g_SD, ch.g_RD_hat);
      double tau = cfg.forced_tau ? *cfg.forced_tau : optimal_threshold(sc);
      double stat = radiometer_statistic(sc, ch.g_RD_tilde, blk.covert);
      blk.verdict = stat > tau ? Verdict::kD1 : Verdict::kD0;
      if (!blk.covert && blk.verdict == Verdict::kD1) false_alarms++;
      if (blk.covert && blk.verdict == Verdict::kD0) missed++;

      long q = discretize_charge_fs(
          p, harvest_fs(p, ch.g_SR, ch.g_RR, blk.covert));
      int next = static_cast<int>(
          std::min<long>(level - cq.q_fs_c + q, p.L));
      level = next;
    }
    blk.level_after = level;
    s.transition_counts[static_cast<std::size_t>(blk.level_before) * n +
                        level]++;
    if (cfg.record_trace && trace) trace->push_back(blk);
  }

  s.empirical_xi.resize(n);
  for (int i = 0; i < n; ++i) {
    s.empirical_xi[i] = static_cast<double>(s.level_counts[i]) / cfg.blocks;
  }
  double denom = cfg.accounting == OutageAccounting::kChargingIsOutage
                     ? static_cast<double>(cfg.blocks)
                     : static_cast<double>(attempted);
  s.empirical_top = outages / denom;
  s.empirical_top_fs = fs_outages / denom;
  s.empirical_top_peh = peh_outages / denom;
  s.empirical_p_fa =
      s.fs_h0_blocks ? static_cast<double>(false_alarms) / s.fs_h0_blocks : 0.0;
  s.empirical_p_md =
      s.fs_h1_blocks ? static_cast<double>(missed) / s.fs_h1_blocks : 0.0;
  s.empirical_p_e = s.empirical_p_fa + s.empirical_p_md;
  s.energy_ok_fraction = static_cast<double>(energy_ok) / cfg.blocks;
  return s;
}

CovertFrequencies empirical_covert_metrics(const SimSummary& s) {
  if (s.fs_blocks < 1000) {
    throw ConfigError(
        "only " + std::to_string(s.fs_blocks) +
        " relay blocks observed; run more blocks for covert statistics");
  }
  return CovertFrequencies{s.empirical_p_fa, s.empirical_p_md,
                           s.empirical_p_e};
}

}  // namespace hor
