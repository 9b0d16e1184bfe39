#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hyperq/dynamics.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/hyperkahler.hpp"
#include "hyperq/quaternion.hpp"

using namespace hyperq;
using dynamics::RealPoint;
using dynamics::RealVector;

namespace {

const double kPi = 3.14159265358979323846;

dynamics::SystemConfig euclidean_config(int n) {
  return {n, hyperkahler::build_structure(n),
          [](const RealPoint& p) { return p[0]; },
          std::nullopt};
}

// Flow field of the operator [[i]]: psi' = -psi * i.
dynamics::VectorField unit_i_flow() {
  return [](const RealPoint& p) {
    return hyperkahler::hyperfield({{Quaternion::unit(1)}}, p).vector;
  };
}

double endpoint_error(double dt) {
  const auto traj = dynamics::integrate(unit_i_flow(), {1, 0, 0, 0}, kPi / 2.0, dt);
  const RealPoint& last = traj.back().state;
  const RealPoint want{0, -1, 0, 0};
  double err = 0.0;
  for (int k = 0; k < 4; ++k) err = std::fmax(err, std::abs(last[k] - want[k]));
  return err;
}

RealPoint realified(const hilbert::QuaternionTuple& t) { return hyperkahler::realify(t); }

Quaternion random_quaternion(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("the temporal field of first-coordinate time is constant") {
  const auto cfg = euclidean_config(1);
  const auto sample = dynamics::evolution_field(cfg, {0.2, -0.5, 1.0, 0.7});
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(sample.vector[k] - (k == 0 ? 1.0 : 0.0)) < 1e-9);
  }

  // Same answer when the differential is supplied analytically.
  auto cfg2 = euclidean_config(1);
  cfg2.ambient_time_grad = [](const RealPoint& p) {
    RealVector g(p.size(), 0.0);
    g[0] = 1.0;
    return g;
  };
  const auto sample2 = dynamics::evolution_field(cfg2, {0.2, -0.5, 1.0, 0.7});
  for (int k = 0; k < 4; ++k) CHECK(sample2.vector[k] == (k == 0 ? 1.0 : 0.0));
}

TEST_CASE("the flow of [[i]] is a clockwise circle in the (1, i) plane") {
  const double dt = 1e-3;
  const auto traj = dynamics::integrate(unit_i_flow(), {1, 0, 0, 0}, kPi / 2.0, dt);

  REQUIRE(traj.size() >= 2);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.front().state == RealPoint{1, 0, 0, 0});
  CHECK(traj.back().t == kPi / 2.0);

  double max_state_err = 0.0, max_norm_drift = 0.0;
  double prev_t = traj.front().t;
  bool first = true;
  for (const auto& sample : traj) {
    if (!first) {
      CHECK(sample.t > prev_t);
      CHECK(sample.t - prev_t <= dt * (1.0 + 1e-9));
    }
    first = false;
    prev_t = sample.t;
    // Exact solution psi(t) = e^{-i t}.
    const double c = std::cos(sample.t), s = -std::sin(sample.t);
    max_state_err = std::fmax(max_state_err, std::abs(sample.state[0] - c));
    max_state_err = std::fmax(max_state_err, std::abs(sample.state[1] - s));
    max_state_err = std::fmax(max_state_err, std::abs(sample.state[2]));
    max_state_err = std::fmax(max_state_err, std::abs(sample.state[3]));
    double n2 = 0.0;
    for (double v : sample.state) n2 += v * v;
    max_norm_drift = std::fmax(max_norm_drift, std::abs(std::sqrt(n2) - 1.0));
  }
  CHECK(max_state_err < 1e-6);
  CHECK(max_norm_drift < 1e-8);
}

TEST_CASE("halving the step divides the endpoint error by about sixteen") {
  // Compared where truncation still dominates roundoff.
  const double coarse = (kPi / 2.0) / 32.0;
  const double ratio = endpoint_error(coarse) / endpoint_error(coarse / 2.0);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("integration argument validation") {
  CHECK_THROWS_AS((void)dynamics::integrate(unit_i_flow(), {1, 0, 0, 0}, 1.0, 0.0),
                  ValidationError);
  CHECK_THROWS_AS((void)dynamics::integrate(unit_i_flow(), {1, 0, 0, 0}, -1.0, 0.1),
                  ValidationError);
  CHECK_THROWS_AS((void)dynamics::integrate(unit_i_flow(), {}, 1.0, 0.1), ValidationError);

  const dynamics::VectorField bad_dim = [](const RealPoint&) { return RealVector{1.0}; };
  CHECK_THROWS_AS((void)dynamics::integrate(bad_dim, {1, 0, 0, 0}, 1.0, 0.1), ValidationError);

  const dynamics::VectorField blows_up = [](const RealPoint&) {
    return RealVector{std::numeric_limits<double>::infinity(), 0, 0, 0};
  };
  CHECK_THROWS_AS((void)dynamics::integrate(blows_up, {1, 0, 0, 0}, 1.0, 0.1), NumericError);

  // Zero horizon: only the start sample.
  const auto traj = dynamics::integrate(unit_i_flow(), {1, 0, 0, 0}, 0.0, 0.1);
  CHECK(traj.size() == 1);
}

TEST_CASE("same_world recovers the left factor between ray mates") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const hilbert::QuaternionTuple psi{random_quaternion(rng), random_quaternion(rng)};
    const Quaternion q = random_quaternion(rng);
    if (q.norm() < 0.1 || psi[0].norm() < 0.1) continue;
    hilbert::QuaternionTuple phi(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) phi[j] = q * psi[j];
    const auto witness = dynamics::same_world(realified(phi), realified(psi));
    REQUIRE(witness.has_value());
    CHECK(max_abs_diff(*witness, q) < 1e-9);
  }
}

TEST_CASE("distinct coordinate rays are distinct worlds") {
  const RealPoint e1 = realified({Quaternion{1, 0, 0, 0}, Quaternion{}});
  const RealPoint e2 = realified({Quaternion{}, Quaternion{1, 0, 0, 0}});
  CHECK(!dynamics::same_world(e1, e2).has_value());
  CHECK(!dynamics::same_world(e2, e1).has_value());
}

TEST_CASE("same_world edge cases") {
  const RealPoint zero(8, 0.0);
  const RealPoint e1 = realified({Quaternion{1, 0, 0, 0}, Quaternion{}});
  CHECK_THROWS_AS((void)dynamics::same_world(zero, zero), ValidationError);
  CHECK(!dynamics::same_world(e1, zero).has_value());
  CHECK(!dynamics::same_world(zero, e1).has_value());

  // A negligible first entry moves the pivot to the second one.
  const hilbert::QuaternionTuple psi{Quaternion{1e-14, 0, 0, 0}, Quaternion{0, 1, 0, 0}};
  const Quaternion q{0.5, -1.5, 0.25, 2.0};
  hilbert::QuaternionTuple phi(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) phi[j] = q * psi[j];
  const auto witness = dynamics::same_world(realified(phi), realified(psi));
  REQUIRE(witness.has_value());
  CHECK(max_abs_diff(*witness, q) < 1e-9);
}

TEST_CASE("verticality of field samples") {
  const auto cfg = euclidean_config(2);
  const RealPoint psi = realified({Quaternion{1, 0, 0, 0}, Quaternion{0, 1, 0, 0}});

  // i * (1, i) = (i, -1) is vertical.
  const RealVector vertical = realified({Quaternion{0, 1, 0, 0}, Quaternion{-1, 0, 0, 0}});
  CHECK(dynamics::is_proper_state(cfg, {psi, vertical}));

  // (i, 1) is not: the first slot forces the factor i, which sends i to -1.
  const RealVector tilted = realified({Quaternion{0, 1, 0, 0}, Quaternion{1, 0, 0, 0}});
  CHECK(!dynamics::is_proper_state(cfg, {psi, tilted}));

  // The zero vector is trivially vertical; the zero point is rejected.
  CHECK(dynamics::is_proper_state(cfg, {psi, RealVector(8, 0.0)}));
  CHECK_THROWS_AS((void)dynamics::is_proper_state(cfg, {RealPoint(8, 0.0), vertical}),
                  ValidationError);
}

TEST_CASE("every tangent direction is vertical when n = 1") {
  const auto cfg = euclidean_config(1);
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    RealPoint p{u(rng), u(rng), u(rng), u(rng)};
    RealVector v{u(rng), u(rng), u(rng), u(rng)};
    if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3] < 0.1) continue;
    CHECK(dynamics::is_proper_state(cfg, {p, v}));
  }
}

TEST_CASE("propensity between the first two coordinate rays is 1/sqrt(2)") {
  const auto cfg = euclidean_config(2);
  const RealPoint e1 = realified({Quaternion{1, 0, 0, 0}, Quaternion{}});
  const RealPoint e2 = realified({Quaternion{}, Quaternion{1, 0, 0, 0}});
  const double rho = dynamics::propensity(cfg, e1, e2);
  CHECK(std::abs(rho - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(dynamics::propensity(cfg, e2, e1) == rho);
}

TEST_CASE("propensity is infinite within one world") {
  const auto cfg = euclidean_config(1);
  const RealPoint phi{0.6, -0.2, 0.9, 0.1};
  RealPoint minus = phi;
  for (double& v : minus) v = -v;
  CHECK(std::isinf(dynamics::propensity(cfg, phi, minus)));

  const hilbert::QuaternionTuple base{Quaternion{0.6, -0.2, 0.9, 0.1}};
  const Quaternion q{0.0, 2.0, -1.0, 0.5};
  CHECK(std::isinf(
      dynamics::propensity(cfg, realified(base), realified({q * base[0]}))));
}

TEST_CASE("propensity is symmetric on random world pairs") {
  const auto cfg = euclidean_config(2);
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    RealPoint a(8), b(8);
    for (double& v : a) v = u(rng);
    for (double& v : b) v = u(rng);
    double rho_ab = 0.0, rho_ba = 0.0;
    try {
      rho_ab = dynamics::propensity(cfg, a, b);
      rho_ba = dynamics::propensity(cfg, b, a);
    } catch (const NumericError&) {
      continue;  // segment through the puncture, no value to compare
    }
    CHECK(rho_ab == rho_ba);
  }
}

TEST_CASE("measurement of an operator observable along its own flow") {
  const auto cfg = euclidean_config(1);
  const auto obs = dynamics::make_operator_observable({{Quaternion::unit(1)}});
  algebra::CanonicalFrame b;
  b.rotation = {{{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}};

  dynamics::Observation observation{obs, {1, 0, 0, 0}, {0, -1, 0, 0}};
  const auto outcome = dynamics::measure(cfg, observation, b);
  REQUIRE(outcome.success);
  CHECK(outcome.present_time == 0.0);
  REQUIRE(outcome.propensity.has_value());
  CHECK(std::isinf(*outcome.propensity));  // endpoint stayed in the start world
  REQUIRE(outcome.world_witness.has_value());
  CHECK(max_abs_diff(*outcome.world_witness, Quaternion{0, 1, 0, 0}) < 1e-12);
  REQUIRE(outcome.property.has_value());
  CHECK(max_abs_diff(*outcome.property, Quaternion{0, -1, 0, 0}) < 1e-12);
}

TEST_CASE("a bare expectation map fails the regularity gate") {
  const auto cfg = euclidean_config(1);
  dynamics::Observable obs;
  obs.value = [](const RealPoint& p) {
    return hilbert::expectation({{Quaternion::unit(1)}}, hyperkahler::derealify(p));
  };
  algebra::CanonicalFrame b;
  b.rotation = {{{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}};

  dynamics::Observation observation{obs, {1, 0, 0, 0}, {0, -1, 0, 0}};
  const auto outcome = dynamics::measure(cfg, observation, b);
  CHECK(!outcome.success);
  CHECK(!outcome.propensity.has_value());
  CHECK(!outcome.property.has_value());
  CHECK(!outcome.world_witness.has_value());
  CHECK(outcome.present_time == 0.0);
}

TEST_CASE("hamiltonian check matches the right generator and rejects the wrong one") {
  // Supply dT as the covector of the [[i]]-hyperfield so that the temporal
  // field coincides with the operator's flow field.
  auto cfg = euclidean_config(1);
  cfg.ambient_time_grad = [](const RealPoint& p) {
    return RealVector{p[1], -p[0], -p[3], p[2]};
  };
  const auto obs = dynamics::make_operator_observable({{Quaternion::unit(1)}});

  std::mt19937 rng(59);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RealPoint> points;
  for (int k = 0; k < 5; ++k) points.push_back({u(rng), u(rng), u(rng), u(rng)});

  CHECK(dynamics::matches_evolution_field(cfg, obs, points));
  CHECK(!dynamics::matches_evolution_field(euclidean_config(1), obs, points));
}

TEST_CASE("configuration validation") {
  auto cfg = euclidean_config(1);
  cfg.n = 2;  // structure still has n = 1
  CHECK_THROWS_AS(dynamics::check_config(cfg), ValidationError);

  auto no_time = euclidean_config(1);
  no_time.ambient_time = nullptr;
  CHECK_THROWS_AS(dynamics::check_config(no_time), ValidationError);
}
