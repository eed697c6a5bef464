#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hor/energy.hpp"
#include "hor/markov_energy.hpp"
#include "oracles.hpp"

using namespace hor;

namespace {

SystemParams defaults() { return default_params(); }

}  // namespace

TEST_CASE("pure-harvest quantum probabilities") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);

  // m = 0: Pr(|h_SR|^2 < C_P/(eta*P_S*L)) = 1 - exp(-1e-3 * 513).
  double p0 = prob_qpeh_eq(p, g, 0);
  CHECK(p0 == doctest::Approx(1.0 - std::exp(-0.513)).epsilon(1e-14));
  CHECK(p0 == doctest::Approx(0.40127).epsilon(1e-4));

  double total = 0.0;
  for (long m = 0; m < 200; ++m) total += prob_qpeh_eq(p, g, m);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(prob_qpeh_eq(p, g, 100000) < 1e-300);
  CHECK(prob_qpeh_eq(p, g, -1) == 0.0);
}

TEST_CASE("pure-harvest quantum probability vs Monte Carlo") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  RngStream rng(555);
  const int n = 10000000;
  double unit = p.C_P / (p.eta * p.P_S * p.L);
  int zero = 0;
  for (int i = 0; i < n; ++i) {
    if (rng.exponential(g.Omega_SR) < unit) zero++;
  }
  CHECK(std::fabs(static_cast<double>(zero) / n - prob_qpeh_eq(p, g, 0)) <
        1e-3);
}

TEST_CASE("relay-harvest sum CDF") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  CHECK(cdf_Z(p, g, 0.0, false) == 0.0);
  CHECK(cdf_Z(p, g, 1e9, false) == doctest::Approx(1.0));

  // Monte Carlo over Z = P_S*g_SR + k*P_R*g_RR at the consumption boundary.
  double x = p.C_P / (p.eta * p.rho * p.eta_prime) * (15.0 / 25.0);
  RngStream rng(808);
  const int n = 10000000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    double z = p.P_S * rng.exponential(g.Omega_SR) +
               p.k * p.P_R * rng.exponential(g.Omega_RR);
    if (z < x) below++;
  }
  CHECK(std::fabs(static_cast<double>(below) / n - cdf_Z(p, g, x, false)) <
        1e-3);

  // Equal-rate branch reduces to the two-exponential-sum CDF.
  SystemParams q = p;
  ChannelGains gg = g;
  gg.Omega_RR = p.P_S * g.Omega_SR / (q.k * q.P_R);
  double theta = q.P_S * g.Omega_SR;
  CHECK(cdf_Z(q, gg, 2.0 * theta, false) ==
        doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-7));

  // Mixture interpolates the two pure variants.
  double x2 = 3.0 * theta;
  double lo = cdf_Z(p, g, x2, true);   // larger relay power, lower CDF
  double hi = cdf_Z(p, g, x2, false);
  double mid = cdf_Z_mixed(p, g, x2, 0.5);
  CHECK(mid == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-14));
}

TEST_CASE("relay net-quantum probabilities") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  long q_c = discretize_consume(p).q_fs_c;

  CHECK(prob_qfs_minus_qc_eq(p, g, -q_c - 1, 0.5) == 0.0);

  // Full drop with an effectively unlimited staging battery equals
  // F_Z at one unit's worth of raw harvest.
  SystemParams big = p;
  big.C_M = 1.0;
  double z_unit = p.C_P / (p.eta * p.rho * p.eta_prime * p.L);
  CHECK(prob_qfs_minus_qc_eq(big, g, -q_c, 0.0) ==
        doctest::Approx(cdf_Z(big, g, z_unit, false)).epsilon(1e-12));

  // No staging battery, no harvest: everything above the floor is impossible.
  SystemParams none = p;
  none.C_M = 0.0;
  for (long d = -q_c + 1; d < 2 * p.L; ++d) {
    CHECK(prob_qfs_minus_qc_eq(none, g, d, 0.5) == 0.0);
  }

  // CDF telescoping when C_M covers every reachable level.
  SystemParams wide = p;
  wide.C_M = (p.L + q_c + 1) * p.C_P / (p.eta_prime * p.L);
  double total = 0.0;
  for (long d = -q_c; d <= p.L + q_c; ++d) {
    total += prob_qfs_minus_qc_eq(wide, g, d, 0.5);
  }
  total += prob_qfs_minus_qc_geq(wide, g, p.L + q_c + 1, 0.5);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  // The tail op is the telescoped sum of the point masses.
  double tail = prob_qfs_minus_qc_geq(p, g, 3, 0.5);
  double summed = 0.0;
  for (long d = 3; d < 50; ++d) summed += prob_qfs_minus_qc_eq(p, g, d, 0.5);
  CHECK(tail == doctest::Approx(summed).epsilon(1e-10));
}

TEST_CASE("transition matrix structure at defaults") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  TransitionMatrix m = build_transition_matrix(p, g, 0.5);

  CHECK(m.phi == 15);
  CHECK(m.q_fs_c == 15);
  CHECK(m(0, 0) == doctest::Approx(0.40127).epsilon(1e-4));

  int n = p.L + 1;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      double v = m(i, j);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      row += v;
      if (i < m.phi && j < i) CHECK(v == 0.0);
    }
    CHECK(std::fabs(row - 1.0) <= 1e-9);
  }
  CHECK(is_irreducible(m));

  // The matrix is asymmetric.
  bool asymmetric = false;
  for (int i = 0; i < n && !asymmetric; ++i)
    for (int j = 0; j < n; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > 1e-12) {
        asymmetric = true;
        break;
      }
  CHECK(asymmetric);
}

TEST_CASE("three-level chain has the reference nonzero pattern") {
  SystemParams p = defaults();
  p.L = 2;  // phi = ceil(0.6*2) = 2: only the full state can relay
  ChannelGains g = derive_gains(p);
  TransitionMatrix m = build_transition_matrix(p, g, 0.5);
  CHECK(m.phi == 2);
  // Rows 0 and 1 never descend; all states reach upward and the top state
  // can fall back, giving the reference three-state shape.
  CHECK(m(0, 0) > 0.0);
  CHECK(m(0, 1) > 0.0);
  CHECK(m(0, 2) > 0.0);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(1, 1) > 0.0);
  CHECK(m(1, 2) > 0.0);
  CHECK(m(2, 0) > 0.0);
  CHECK(m(2, 1) > 0.0);
  CHECK(m(2, 2) > 0.0);
  CHECK(is_irreducible(m));
}

TEST_CASE("stationary distribution properties") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  TransitionMatrix m = build_transition_matrix(p, g, 0.5);
  StationaryDistribution xi = stationary_distribution(m);

  double total = 0.0;
  for (double v : xi.xi) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

  // Fixed point of M^T.
  int n = p.L + 1;
  for (int i = 0; i < n; ++i) {
    double next = 0.0;
    for (int j = 0; j < n; ++j) next += m(j, i) * xi.xi[j];
    CHECK(std::fabs(next - xi.xi[i]) <= 1e-8);
  }

  // Independent solver cross-check.
  StationaryDistribution pi = power_iteration(m, 100000);
  for (int i = 0; i < n; ++i) {
    CHECK(std::fabs(pi.xi[i] - xi.xi[i]) <= 1e-8);
  }
}

TEST_CASE("two-state sanity solves") {
  TransitionMatrix m;
  m.L = 1;
  m.phi = 1;
  m.q_fs_c = 1;
  m.p = {0.5, 0.5, 0.5, 0.5};
  StationaryDistribution xi = stationary_distribution(m);
  CHECK(xi.xi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(xi.xi[1] == doctest::Approx(0.5).epsilon(1e-12));

  m.p = {1.0, 0.0, 0.0, 1.0};  // two absorbing states
  CHECK_THROWS_AS(stationary_distribution(m), ConfigError);
}

TEST_CASE("energy-ok tail mass") {
  SystemParams p = defaults();
  ChannelGains g = derive_gains(p);
  StationaryDistribution xi =
      stationary_distribution(build_transition_matrix(p, g, 0.5));
  CHECK(prob_energy_ok(xi, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(prob_energy_ok(xi, p.L + 1) == 0.0);
  double tail = prob_energy_ok(xi, 15);
  CHECK(tail > 0.0);
  CHECK(tail < 1.0);
}

TEST_CASE("finer discretization helps meet the energy requirement") {
  SystemParams p5 = defaults();
  p5.L = 5;
  SystemParams p25 = defaults();
  ChannelGains g = derive_gains(p25);
  double ok5 = prob_energy_ok(
      stationary_distribution(build_transition_matrix(p5, g, 0.5)),
      discretize_consume(p5).phi);
  double ok25 = prob_energy_ok(
      stationary_distribution(build_transition_matrix(p25, g, 0.5)),
      discretize_consume(p25).phi);
  CHECK(ok25 >= ok5);
}

TEST_CASE("row-stochastic across the sweep grid") {
  // Every preset grid point must build a clean chain; representative spread.
  SystemParams base = defaults();
  ChannelGains gd = derive_gains(base);
  for (double ps : {1e-6, 1e-5, 1e-4, 1e-2}) {
    for (int L : {5, 25, 400}) {
      SystemParams p = base;
      p.P_S = ps;
      p.L = L;
      TransitionMatrix m = build_transition_matrix(p, gd, 0.5);
      for (int i = 0; i <= L; ++i) {
        double row = 0.0;
        for (int j = 0; j <= L; ++j) row += m(i, j);
        CHECK(std::fabs(row - 1.0) <= 1e-9);
      }
      CHECK(is_irreducible(m));
    }
  }
}
