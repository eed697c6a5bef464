#include "hor/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

#include "hor/covert_detection.hpp"
#include "hor/markov_energy.hpp"
#include "hor/outage_analytics.hpp"
#include "hor/simulator.hpp"

namespace hor {
namespace {

bool released_has(const std::vector<std::string>& released,
                  const std::string& name) {
  return std::find(released.begin(), released.end(), name) != released.end();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;  // keep the endpoint exact despite rounding
  return v;
}

std::vector<double> dbm_grid(double a_dbm, double b_dbm, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = dbm_to_watt(a_dbm + (b_dbm - a_dbm) * i / (n - 1));
  return v;
}

void set_param(SystemParams& p, const std::string& key, double value) {
  apply_setting(p, key, value);
}

}  // namespace

void apply_bindings(SystemParams& p, const std::vector<std::string>& released) {
  if (!released_has(released, "eth")) p.E_th = 0.6 * p.C_P;
  if (!released_has(released, "pr")) p.P_R = p.E_th;
  if (!released_has(released, "pdelta")) p.P_Delta = 0.2 * p.P_R;
}

std::optional<std::string> binding_for_key(const std::string& key) {
  if (key == "E_th") return "eth";
  if (key == "P_R") return "pr";
  if (key == "P_Delta") return "pdelta";
  return std::nullopt;
}

SystemParams point_params(const SweepSpec& spec, double family_value,
                          double target_value) {
  for (const std::string* key : {&spec.target, &spec.family}) {
    if (key->empty()) continue;
    auto bound = binding_for_key(*key);
    if (bound && !released_has(spec.released, *bound)) {
      throw ConfigError("parameter '" + *key + "' is pinned by binding '" +
                        *bound + "'; release it to sweep this parameter");
    }
  }
  SystemParams p = spec.base;
  if (!spec.family.empty()) set_param(p, spec.family, family_value);
  if (spec.kind != SweepKind::kCovert && !spec.target.empty()) {
    set_param(p, spec.target, target_value);
  }
  apply_bindings(p, spec.released);
  p.validate();
  return p;
}

namespace {

SweepRow outage_point(const SweepSpec& spec, double family_value,
                      double target_value, std::uint64_t seed) {
  SystemParams p = point_params(spec, family_value, target_value);
  ChannelGains g = derive_gains(p);
  TransitionMatrix m = build_transition_matrix(p, g, 0.5);
  StationaryDistribution xi = stationary_distribution(m);
  OutageReport rep = top_overall(p, g, xi, m.phi);

  SimConfig cfg;
  cfg.params = p;
  cfg.blocks = spec.blocks_per_point;
  cfg.seed = seed;
  SimSummary sim = run(cfg);

  SweepRow row;
  row.family_value = family_value;
  row.target_value = target_value;
  row.analytic = rep.top;
  row.empirical = sim.empirical_top;
  row.gap = std::fabs(rep.top - sim.empirical_top);
  row.top_fs = rep.top_fs;
  row.top_peh = rep.top_peh;
  row.no_relay = top_no_relay(p, g);
  row.diverged = rep.diverged;
  return row;
}

void run_outage_sweep(const SweepSpec& spec, SweepResult& out) {
  std::vector<double> families =
      spec.family.empty() ? std::vector<double>{
                                std::numeric_limits<double>::quiet_NaN()}
                          : spec.family_values;
  std::vector<std::future<SweepRow>> futures;
  std::uint64_t index = 0;
  for (double fv : families) {
    for (double tv : spec.grid) {
      std::uint64_t seed = spec.seed_base ^ index;
      futures.push_back(std::async(std::launch::async, outage_point,
                                   std::cref(spec), fv, tv, seed));
      ++index;
    }
  }
  for (auto& f : futures) out.rows.push_back(f.get());
}

void run_stationary_sweep(const SweepSpec& spec, SweepResult& out) {
  std::vector<double> families =
      spec.family.empty() ? std::vector<double>{
                                std::numeric_limits<double>::quiet_NaN()}
                          : spec.family_values;
  std::uint64_t index = 0;
  for (double fv : families) {
    SystemParams p = point_params(spec, fv, 0.0);
    ChannelGains g = derive_gains(p);
    TransitionMatrix m = build_transition_matrix(p, g, 0.5);
    StationaryDistribution xi = stationary_distribution(m);
    SimConfig cfg;
    cfg.params = p;
    cfg.blocks = spec.blocks_per_point;
    cfg.seed = spec.seed_base ^ index;
    SimSummary sim = run(cfg);
    for (int lvl = 0; lvl <= p.L; ++lvl) {
      SweepRow row;
      row.family_value = fv;
      row.target_value = lvl;
      row.analytic = xi.xi[lvl];
      row.empirical = sim.empirical_xi[lvl];
      row.gap = std::fabs(row.analytic - row.empirical);
      out.rows.push_back(row);
    }
    ++index;
  }
}

void run_covert_sweep(const SweepSpec& spec, SweepResult& out) {
  SystemParams p = spec.base;
  apply_bindings(p, spec.released);
  p.validate();
  ChannelGains g = derive_gains(p);
  CovertScenario s =
      make_scenario(p, g, spec.covert_g_SD, spec.covert_g_RD_hat);
  EmpiricalErrorCurve emp = empirical_error_curve(
      s, spec.grid, spec.blocks_per_point, spec.seed_base);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    SweepRow row;
    row.family_value = std::numeric_limits<double>::quiet_NaN();
    row.target_value = spec.grid[i];
    row.analytic = p_detection_error(s, spec.grid[i]);
    row.empirical = emp.p_e[i];
    row.gap = std::fabs(row.analytic - row.empirical);
    out.rows.push_back(row);
  }
  out.tau_star = optimal_threshold(s);
  out.p_e_star = min_detection_error(s);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.kind != SweepKind::kStationary && spec.grid.empty()) {
    throw ConfigError("sweep '" + spec.name + "' has an empty grid");
  }
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw ConfigError("sweep grid must be strictly increasing");
    }
  }
  SweepResult out;
  out.spec = spec;
  switch (spec.kind) {
    case SweepKind::kOutage:
      run_outage_sweep(spec, out);
      break;
    case SweepKind::kStationary:
      run_stationary_sweep(spec, out);
      break;
    case SweepKind::kCovert:
      run_covert_sweep(spec, out);
      break;
  }
  for (const SweepRow& r : out.rows) {
    out.max_gap = std::max(out.max_gap, r.gap);
    out.any_diverged = out.any_diverged || r.diverged;
  }
  return out;
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec s;
  s.name = name;
  s.base = default_params();
  if (name == "fig2") {
    s.kind = SweepKind::kStationary;
    s.family = "L";
    s.family_values = {25, 5};
    s.blocks_per_point = 1000000;
  } else if (name == "fig3") {
    s.kind = SweepKind::kCovert;
    // Fixed block pair: |h_SD|^2 and the estimated part of |h_RD|^2 at
    // beta = 0.5.
    s.covert_g_SD = 8.29e-6;
    s.covert_g_RD_hat = (1.0 - s.base.beta) * 3.44837e-3;
    ChannelGains g = derive_gains(s.base);
    CovertScenario sc =
        make_scenario(s.base, g, s.covert_g_SD, s.covert_g_RD_hat);
    s.grid = linspace(0.8 * sc.j0(),
                      sc.j1() + 8.0 * s.base.beta *
                                    (s.base.P_R + s.base.P_Delta) * g.Omega_RD,
                      200);
    s.blocks_per_point = 1000000;
  } else if (name == "fig4") {
    s.target = "P_S";
    s.grid = dbm_grid(-30.0, 10.0, 21);
    s.family = "L";
    s.family_values = {5, 25, 400};  // 400 stands in for the continuous limit
  } else if (name == "fig5") {
    s.target = "C_P";
    s.grid = linspace(2e-7, 4e-6, 20);
    s.family = "L";
    s.family_values = {5, 25};
  } else if (name == "fig6") {
    s.target = "rho";
    s.grid = linspace(0.02, 0.98, 49);
    s.family = "L";
    s.family_values = {5, 25};
  } else if (name == "fig7") {
    s.target = "sigma2_R";
    s.grid = dbm_grid(-80.0, -40.0, 21);
    s.family = "rho";
    s.family_values = {0.5, 0.84, 0.9};
  } else if (name == "fig8") {
    s.target = "k";
    s.grid = linspace(0.1, 1.0, 19);
    s.family = "P_S";
    s.family_values = {dbm_to_watt(-15.0), dbm_to_watt(-10.0),
                       dbm_to_watt(-5.0)};
  } else if (name == "fig9") {
    s.target = "d_SR";
    s.grid = linspace(7.5, 22.5, 16);
    s.family = "L";
    s.family_values = {5, 25};
  } else if (name == "fig10") {
    s.target = "gamma_th";
    s.grid = linspace(0.2, 3.0, 15);
    s.family = "k";
    s.family_values = {0.1, 1.0};
  } else if (name == "fig11") {
    s.target = "E_th";
    s.grid = linspace(1e-7, 1e-6, 19);
    s.family = "k";
    s.family_values = {0.1, 1.0};
    s.released = {"eth"};
  } else if (name == "fig12") {
    s.target = "P_R";
    s.grid = linspace(1e-7, 1e-6, 19);
    s.family = "k";
    s.family_values = {0.1, 1.0};
    s.released = {"pr"};
  } else {
    std::string valid;
    for (const std::string& n : figure_preset_names()) {
      valid += valid.empty() ? n : ", " + n;
    }
    throw ConfigError("unknown figure preset '" + name + "'; valid: " + valid);
  }
  return s;
}

std::vector<std::string> figure_preset_names() {
  return {"fig2", "fig3", "fig4",  "fig5",  "fig6", "fig7",
          "fig8", "fig9", "fig10", "fig11", "fig12"};
}

void write_csv(std::ostream& out, const SweepResult& result, bool with_meta) {
  const SweepSpec& spec = result.spec;
  if (with_meta) {
    out << "# sweep=" << spec.name << " target=" << spec.target
        << " family=" << spec.family << " blocks=" << spec.blocks_per_point
        << " seed=" << spec.seed_base << "\n";
    if (spec.kind == SweepKind::kCovert) {
      out << "# tau_star=" << result.tau_star
          << " p_e_star=" << result.p_e_star << "\n";
    }
    out << "# max_gap=" << result.max_gap << "\n";
  }
  const char* target_col = spec.kind == SweepKind::kCovert ? "tau"
                           : spec.kind == SweepKind::kStationary
                               ? "level"
                               : spec.target.c_str();
  out << "family,family_value," << target_col
      << ",analytic,empirical,gap,top_fs,top_peh,no_relay,diverged\n";
  for (const SweepRow& r : result.rows) {
    out << spec.family << "," << r.family_value << "," << r.target_value << ","
        << r.analytic << "," << r.empirical << "," << r.gap << "," << r.top_fs
        << "," << r.top_peh << "," << r.no_relay << "," << (r.diverged ? 1 : 0)
        << "\n";
  }
}

}  // namespace hor
