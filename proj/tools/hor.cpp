#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hor/covert_detection.hpp"
#include "hor/markov_energy.hpp"
#include "hor/outage_analytics.hpp"
#include "hor/simulator.hpp"
#include "hor/sweep.hpp"
#include "hor/system_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDiverged = 3;

struct CommonOpts {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_file;
  std::uint64_t blocks = 200000;
  std::uint64_t seed = 1;
  bool no_header_meta = false;
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--config", o.config_file, "key=value parameter file");
  app->add_option("--set", o.overrides, "parameter override key=value");
  app->add_option("--out", o.out_file, "output file (default stdout)");
  app->add_option("--blocks", o.blocks, "Monte Carlo blocks");
  app->add_option("--seed", o.seed, "random seed");
  app->add_flag("--no-header-meta", o.no_header_meta,
                "suppress '#' metadata lines in CSV output");
}

hor::SystemParams build_params(const CommonOpts& o) {
  hor::SystemParams p = hor::default_params();
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw hor::ConfigError("cannot open config file " + o.config_file);
    p = hor::load_params(in, p);
  }
  for (const std::string& kv : o.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw hor::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    hor::apply_setting(p, kv.substr(0, eq), kv.substr(eq + 1));
  }
  p.validate();
  return p;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw hor::ConfigError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_stationary(const CommonOpts& o) {
  hor::SystemParams p = build_params(o);
  hor::ChannelGains g = hor::derive_gains(p);
  hor::TransitionMatrix m = hor::build_transition_matrix(p, g, 0.5);
  hor::StationaryDistribution xi = hor::stationary_distribution(m);
  Output out(o.out_file);
  out.stream() << "level,energy_joule,xi\n";
  for (int i = 0; i <= p.L; ++i) {
    out.stream() << i << "," << i * p.energy_unit() << "," << xi.xi[i] << "\n";
  }
  out.stream() << "p_energy_ok=" << hor::prob_energy_ok(xi, m.phi) << "\n";
  return kExitOk;
}

int cmd_covert(const CommonOpts& o, double hsd_power, double hrdhat_power,
               std::optional<double> beta) {
  hor::SystemParams p = build_params(o);
  if (beta) {
    p.beta = *beta;
    p.validate();
  }
  hor::ChannelGains g = hor::derive_gains(p);
  hor::CovertScenario s = hor::make_scenario(p, g, hsd_power, hrdhat_power);
  Output out(o.out_file);
  double lo = 0.8 * s.j0();
  double hi = s.j1() + 8.0 * p.beta * (p.P_R + p.P_Delta) * g.Omega_RD;
  out.stream() << "tau,p_fa,p_md,p_e\n";
  for (int i = 0; i < 200; ++i) {
    double tau = lo + (hi - lo) * i / 199;
    out.stream() << tau << "," << hor::p_false_alarm(s, tau) << ","
                 << hor::p_missed_detection(s, tau) << ","
                 << hor::p_detection_error(s, tau) << "\n";
  }
  out.stream() << "tau_star=" << hor::optimal_threshold(s) << "\n";
  out.stream() << "p_e_star=" << hor::min_detection_error(s) << "\n";
  return kExitOk;
}

int cmd_outage(const CommonOpts& o) {
  hor::SystemParams p = build_params(o);
  hor::ChannelGains g = hor::derive_gains(p);
  hor::TransitionMatrix m = hor::build_transition_matrix(p, g, 0.5);
  hor::StationaryDistribution xi = hor::stationary_distribution(m);
  hor::OutageReport r = hor::top_overall(p, g, xi, m.phi);
  Output out(o.out_file);
  out.stream() << "top_fs=" << r.top_fs << "\n"
               << "top_peh=" << r.top_peh << "\n"
               << "top=" << r.top << "\n"
               << "top_no_relay=" << hor::top_no_relay(p, g) << "\n"
               << "q_sd=" << r.q_sd << "\n"
               << "p_energy_ok=" << r.p_energy_ok << "\n"
               << "cdf_h0=" << r.cdf_h0 << "\n"
               << "cdf_h1=" << r.cdf_h1 << "\n"
               << "diverged=" << (r.diverged ? 1 : 0) << "\n";
  return r.diverged ? kExitDiverged : kExitOk;
}

int cmd_simulate(const CommonOpts& o, const std::string& trace_file) {
  hor::SimConfig cfg;
  cfg.params = build_params(o);
  cfg.blocks = o.blocks;
  cfg.seed = o.seed;
  cfg.record_trace = !trace_file.empty();
  std::vector<hor::SimBlock> trace;
  hor::SimSummary s = hor::run(cfg, &trace);
  if (!trace_file.empty()) {
    std::ofstream t(trace_file);
    if (!t) throw hor::ConfigError("cannot open trace file " + trace_file);
    t << "block,mode,level_before,level_after,covert,verdict,outage,gamma_D\n";
    for (const hor::SimBlock& b : trace) {
      t << b.index << "," << (b.mode == hor::Mode::kFS ? "FS" : "PEH") << ","
        << b.level_before << "," << b.level_after << "," << (b.covert ? 1 : 0)
        << ","
        << (b.verdict == hor::Verdict::kNotTested
                ? "NOT_TESTED"
                : b.verdict == hor::Verdict::kD1 ? "D1" : "D0")
        << "," << (b.outage ? 1 : 0) << "," << b.gamma_D << "\n";
    }
  }
  Output out(o.out_file);
  out.stream() << "blocks=" << s.blocks << "\n"
               << "fs_blocks=" << s.fs_blocks << "\n"
               << "top=" << s.empirical_top << "\n"
               << "top_fs=" << s.empirical_top_fs << "\n"
               << "top_peh=" << s.empirical_top_peh << "\n"
               << "p_fa=" << s.empirical_p_fa << "\n"
               << "p_md=" << s.empirical_p_md << "\n"
               << "p_e=" << s.empirical_p_e << "\n"
               << "energy_ok_fraction=" << s.energy_ok_fraction << "\n";
  return kExitOk;
}

int run_spec(hor::SweepSpec spec, const CommonOpts& o) {
  if (o.blocks != 200000) spec.blocks_per_point = o.blocks;
  if (o.seed != 1) spec.seed_base = o.seed;
  hor::SweepResult r = hor::run_sweep(spec);
  Output out(o.out_file);
  hor::write_csv(out.stream(), r, !o.no_header_meta);
  return r.any_diverged ? kExitDiverged : kExitOk;
}

int cmd_sweep(const CommonOpts& o, const std::string& target,
              const std::string& grid_desc, const std::string& family,
              const std::string& family_desc,
              const std::vector<std::string>& release) {
  hor::SweepSpec spec;
  spec.name = "sweep-" + target;
  spec.base = build_params(o);
  spec.target = target;
  spec.family = family;
  spec.released = release;
  auto parse_list = [](const std::string& desc) {
    std::vector<double> v;
    std::stringstream ss(desc);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        v.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw hor::ConfigError("cannot parse grid value '" + item + "'");
      }
    }
    return v;
  };
  spec.grid = parse_list(grid_desc);
  if (!family.empty()) spec.family_values = parse_list(family_desc);
  return run_spec(std::move(spec), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid opportunistic relaying analytics and simulation"};
  app.require_subcommand(1);

  CommonOpts stationary_o, covert_o, outage_o, simulate_o, sweep_o, figure_o;

  CLI::App* stationary =
      app.add_subcommand("stationary", "energy-level stationary distribution");
  add_common(stationary, stationary_o);

  CLI::App* covert =
      app.add_subcommand("covert", "detection error metrics for one block");
  add_common(covert, covert_o);
  double hsd_power = 8.29e-6;
  double hrdhat_power = 0.5 * 3.44837e-3;
  std::optional<double> covert_beta;
  covert->add_option("--hsd-power", hsd_power, "|h_SD|^2 of the block");
  covert->add_option("--hrdhat-power", hrdhat_power,
                     "estimated |h_RD|^2 component of the block");
  covert->add_option("--beta", covert_beta, "channel-uncertainty degree");

  CLI::App* outage = app.add_subcommand("outage", "closed-form outage report");
  add_common(outage, outage_o);

  CLI::App* simulate =
      app.add_subcommand("simulate", "block-level protocol simulation");
  add_common(simulate, simulate_o);
  std::string trace_file;
  simulate->add_option("--trace", trace_file, "per-block trace CSV file");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  add_common(sweep, sweep_o);
  std::string target, grid_desc, family, family_desc;
  std::vector<std::string> release;
  sweep->add_option("--target", target, "swept parameter key")->required();
  sweep->add_option("--grid", grid_desc, "comma-separated grid values")
      ->required();
  sweep->add_option("--family", family, "second parameter key");
  sweep->add_option("--family-values", family_desc,
                    "comma-separated family values");
  sweep->add_option("--release", release,
                    "binding names to release (eth, pr, pdelta)");

  CLI::App* figure =
      app.add_subcommand("figure", "reference scenario sweep by name");
  add_common(figure, figure_o);
  std::string figure_name;
  figure->add_option("name", figure_name, "preset name (fig2..fig12)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (stationary->parsed()) return cmd_stationary(stationary_o);
    if (covert->parsed())
      return cmd_covert(covert_o, hsd_power, hrdhat_power, covert_beta);
    if (outage->parsed()) return cmd_outage(outage_o);
    if (simulate->parsed()) return cmd_simulate(simulate_o, trace_file);
    if (sweep->parsed())
      return cmd_sweep(sweep_o, target, grid_desc, family, family_desc,
                       release);
    if (figure->parsed())
      return run_spec(hor::figure_preset(figure_name), figure_o);
  } catch (const hor::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}
