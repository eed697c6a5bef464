#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hor/covert_detection.hpp"

using namespace hor;

namespace {

CovertScenario fixed_scenario() {
  SystemParams p = default_params();
  ChannelGains g = derive_gains(p);
  // The reference block pair: |h_SD|^2 = 8.29e-6 and the estimated relay-link
  // component at beta = 0.5.
  return make_scenario(p, g, 8.29e-6, 0.5 * 3.44837e-3);
}

CovertScenario random_scenario(std::uint64_t seed) {
  SystemParams p = default_params();
  ChannelGains g = derive_gains(p);
  RngStream rng(seed);
  return make_scenario(p, g, rng.exponential(g.Omega_SD),
                       rng.exponential((1.0 - p.beta) * g.Omega_RD));
}

std::vector<double> tau_grid(const CovertScenario& s, int n) {
  double lo = 0.8 * s.j0();
  double hi = s.j1() + 8.0 * s.beta * (s.params.P_R + s.params.P_Delta) *
                           s.Omega_RD;
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("received power ordering") {
  CovertScenario s = fixed_scenario();
  CHECK(s.j1() > s.j0());
  CHECK(radiometer_statistic(s, 0.0, false) == doctest::Approx(s.j0()));
  CHECK(radiometer_statistic(s, 0.0, true) == doctest::Approx(s.j1()));
  double g_tilde = 1e-3;
  double diff = radiometer_statistic(s, g_tilde, true) -
                radiometer_statistic(s, g_tilde, false);
  CHECK(diff == doctest::Approx(s.params.P_Delta * (s.g_RD_hat + g_tilde))
                    .epsilon(1e-12));
}

TEST_CASE("error probability branch forms") {
  CovertScenario s = fixed_scenario();
  CHECK(p_false_alarm(s, 0.5 * s.j0()) == 1.0);
  CHECK(p_false_alarm(s, s.j0()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p_false_alarm(s, 100.0 * s.j1()) < 1e-12);
  CHECK(p_missed_detection(s, s.j1()) == 0.0);
  CHECK(p_missed_detection(s, 1e3 * s.j1()) == doctest::Approx(1.0));
  CHECK(p_detection_error(s, 0.5 * s.j0()) == 1.0);
  CHECK(p_detection_error(s, s.j1()) ==
        doctest::Approx(std::exp((s.j0() - s.j1()) /
                                 (s.beta * s.params.P_R * s.Omega_RD)))
            .epsilon(1e-13));
  // Continuity at both knees.
  double eps = 1e-6 * s.j0();
  CHECK(std::fabs(p_detection_error(s, s.j0() - eps) -
                  p_detection_error(s, s.j0() + eps)) < 1e-4);
  CHECK(std::fabs(p_detection_error(s, s.j1() - eps) -
                  p_detection_error(s, s.j1() + eps)) < 1e-4);
}

TEST_CASE("optimal threshold against a fine grid") {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    CovertScenario s = random_scenario(seed);
    std::vector<double> taus = tau_grid(s, 10000);
    double best = taus[0];
    double best_v = p_detection_error(s, taus[0]);
    for (double t : taus) {
      double v = p_detection_error(s, t);
      if (v < best_v) {
        best_v = v;
        best = t;
      }
    }
    double step = taus[1] - taus[0];
    double tau_star = optimal_threshold(s);
    CHECK(tau_star >= s.j1());
    CHECK(std::fabs(tau_star - best) <= step + 1e-18);
    CHECK(min_detection_error(s) <= best_v + 1e-12);
  }
}

TEST_CASE("minimum error consistency") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CovertScenario s = random_scenario(seed);
    CHECK(std::fabs(min_detection_error(s) -
                    p_detection_error(s, optimal_threshold(s))) <= 1e-12);
    CovertMetrics m = covert_metrics(s);
    CHECK(m.p_e == doctest::Approx(m.p_fa + m.p_md).epsilon(1e-15));
    CHECK(m.p_e_star > 0.0);
    CHECK(m.p_e_star <= 1.0);
  }
}

TEST_CASE("threshold limit for vanishing uncertainty") {
  CovertScenario s = fixed_scenario();
  s.beta = 1e-12;
  CHECK(optimal_threshold(s) == doctest::Approx(s.j1()).epsilon(1e-9));
}

TEST_CASE("minimum error is independent of the source power") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CovertScenario s = random_scenario(seed);
    s.params.P_S = 1e-5;
    double a = min_detection_error(s);
    s.params.P_S = 1e-4;
    double b = min_detection_error(s);
    s.params.P_S = 1e-3;
    double c = min_detection_error(s);
    CHECK(std::fabs(a - b) <= 1e-12);
    CHECK(std::fabs(b - c) <= 1e-12);
  }
}

TEST_CASE("minimum error grows with channel uncertainty") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CovertScenario s = random_scenario(seed);
    double prev = -1.0;
    for (double beta = 0.05; beta <= 0.951; beta += 0.05) {
      s.beta = beta;
      double v = min_detection_error(s);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("minimum error falls as the covert power fraction grows") {
  CovertScenario s = fixed_scenario();
  double prev = 2.0;
  for (double frac = 0.05; frac <= 0.5; frac += 0.05) {
    s.params.P_Delta = frac * s.params.P_R;
    double v = min_detection_error(s);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("closed forms match empirical detection frequencies") {
  CovertScenario s = fixed_scenario();
  std::vector<double> taus = tau_grid(s, 200);
  EmpiricalErrorCurve emp = empirical_error_curve(s, taus, 1000000, 31337);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(std::fabs(emp.p_fa[i] - p_false_alarm(s, taus[i])) < 5e-3);
    CHECK(std::fabs(emp.p_md[i] - p_missed_detection(s, taus[i])) < 5e-3);
  }
}

TEST_CASE("small-sample total-power test dominates a mismatched detector") {
  // With a handful of symbols per block, compare ROC areas of the total-power
  // statistic and a per-symbol peak-magnitude statistic.
  CovertScenario s = fixed_scenario();
  RngStream rng(777);
  for (int n : {4, 16, 64}) {
    const int trials = 20000;
    std::vector<double> power0, power1, peak0, peak1;
    for (int t = 0; t < trials; ++t) {
      double g_tilde = rng.exponential(s.beta * s.Omega_RD);
      double mean0 = s.j0() + s.params.P_R * g_tilde;
      double mean1 = s.j1() + (s.params.P_R + s.params.P_Delta) * g_tilde;
      double sum0 = 0.0, sum1 = 0.0, pk0 = 0.0, pk1 = 0.0;
      for (int i = 0; i < n; ++i) {
        double x0 = rng.exponential(mean0);
        double x1 = rng.exponential(mean1);
        sum0 += x0;
        sum1 += x1;
        pk0 = std::max(pk0, x0);
        pk1 = std::max(pk1, x1);
      }
      power0.push_back(sum0 / n);
      power1.push_back(sum1 / n);
      peak0.push_back(pk0);
      peak1.push_back(pk1);
    }
    auto auc = [](const std::vector<double>& a, const std::vector<double>& b) {
      // Pr(statistic under covert > statistic under clean), sampled pairing.
      int wins = 0;
      for (std::size_t i = 0; i < a.size(); ++i) wins += b[i] > a[i];
      return static_cast<double>(wins) / a.size();
    };
    CHECK(auc(power0, power1) >= auc(peak0, peak1) - 0.02);
  }
}
