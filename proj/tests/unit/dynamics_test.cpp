// Copyright 2026 The curvsir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "curvsir/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "curvsir/error.hpp"
#include "curvsir/random.hpp"
#include "curvsir/spectral.hpp"

namespace curvsir {
namespace {

ContactMatrix unit_raw(const Graph& g) {
  return ContactMatrix::build(g, WeightField::unit(g), MatrixMode::kRaw);
}

ContactMatrix single_node() {
  const std::vector<Triplet> e{{0, 0, 1.0}};
  return ContactMatrix::from_triplets(1, e, MatrixMode::kRaw);
}

TEST(DynamicsTest, DiseaseFreeStateIsStationary) {
  const Graph g = complete_graph(4);
  const auto d = rhs(SirState::homogeneous(4, 1.0, 0.0), unit_raw(g), {0.3, 0.1, 0.05});
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(d.ds[i], 0.0);
    EXPECT_EQ(d.dy[i], 0.0);
  }
}

TEST(DynamicsTest, SingleNodeEndemicStateIsStationary) {
  // s* = gamma / beta, y* = u (1 - s*) / gamma.
  const auto d = rhs(SirState::homogeneous(1, 0.5, 0.25), single_node(), {0.4, 0.2, 0.1});
  EXPECT_NEAR(d.ds[0], 0.0, 1e-15);
  EXPECT_NEAR(d.dy[0], 0.0, 1e-15);
}

TEST(DynamicsTest, BoundaryValues) {
  const Graph g = path_graph(3);
  const EpidemicParams p{0.3, 0.1, 0.05};
  const auto d = rhs(SirState::homogeneous(3, 0.0, 0.2), unit_raw(g), p);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(d.ds[i], p.u);
    EXPECT_DOUBLE_EQ(d.dy[i], -p.gamma * 0.2);
  }
}

TEST(DynamicsTest, ReplenishmentWithoutInfectionIsExact) {
  const Graph g = complete_graph(3);
  IntegrateOptions opts;
  opts.t_end = 10.0;
  opts.dt = 0.01;
  opts.sample_every = 1000;
  const auto traj = integrate(unit_raw(g), {0.3, 0.1, 0.1},
                              SirState::homogeneous(3, 0.5, 0.0), opts);
  ASSERT_EQ(traj.states.size(), 2u);
  EXPECT_NEAR(traj.states.back().t, 10.0, 1e-12);
  for (double s : traj.states.back().s) EXPECT_NEAR(s, 0.816060279414278839, 1e-6);
}

TEST(DynamicsTest, StepGridAndSampling) {
  const Graph g = complete_graph(3);
  IntegrateOptions opts;
  opts.t_end = 1.05;
  opts.dt = 0.1;
  opts.sample_every = 4;
  const auto traj = integrate(unit_raw(g), {0.3, 0.1, 0.1},
                              SirState::homogeneous(3, 0.9, 0.1), opts);
  // 11 steps: samples at 0, 4, 8 and the final step 11.
  const auto t = traj.times();
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], 0.0);
  EXPECT_NEAR(t[1], 0.4, 1e-15);
  EXPECT_NEAR(t[2], 0.8, 1e-15);
  EXPECT_NEAR(t[3], 1.1, 1e-15);
}

TEST(DynamicsTest, RejectsStateOutsideOmega) {
  const Graph g = complete_graph(2);
  EXPECT_THROW(integrate(unit_raw(g), {0.3, 0.1, 0.1}, SirState::homogeneous(2, 0.8, 0.5), {}),
               InvalidArgument);
}

TEST(DynamicsTest, NonFiniteStateAborts) {
  const Graph g = complete_graph(2);
  IntegrateOptions opts;
  opts.t_end = 10.0;
  opts.dt = 1e6;
  EXPECT_THROW(integrate(unit_raw(g), {1e200, 0.1, 0.1}, SirState::homogeneous(2, 0.5, 0.5), opts),
               NumericalError);
}

TEST(DynamicsTest, FourthOrderConvergence) {
  const Graph g = random_connected_graph(6, 0.3, 2);
  const auto m = unit_raw(g);
  const EpidemicParams p{0.5, 0.2, 0.05};
  SirState init = SirState::homogeneous(6, 0.9, 0.0);
  init.y[0] = 0.1;
  auto final_y = [&](double dt) {
    IntegrateOptions o;
    o.t_end = 5.0;
    o.dt = dt;
    o.sample_every = 1000000;
    return integrate(m, p, init, o).states.back().y;
  };
  const auto ref = final_y(0.0125);
  const auto coarse = final_y(0.2);
  const auto fine = final_y(0.1);
  double e1 = 0, e2 = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    e1 = std::max(e1, std::abs(coarse[i] - ref[i]));
    e2 = std::max(e2, std::abs(fine[i] - ref[i]));
  }
  const double ratio = e1 / e2;
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(LyapunovTest, LinearFunctionalCases) {
  Trajectory traj;
  traj.states.push_back(SirState::homogeneous(2, 1.0, 0.0));
  traj.states.push_back({1.0, {0.5, 0.5}, {0.2, 0.4}});
  const std::vector<double> w{0.6, 0.8};
  const auto v = linear_lyapunov(traj, w);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_DOUBLE_EQ(v[1], 0.6 * 0.2 + 0.8 * 0.4);
}

TEST(LyapunovTest, SubcriticalEnvelope) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_connected_graph(12, 0.2, 300 + trial);
    const auto m = unit_raw(g);
    const auto spec = spectral_radius(m);
    const double gamma = rng.uniform(0.1, 0.5);
    const double beta = rng.uniform(0.2, 0.95) * gamma / spec.lambda_max;
    const EpidemicParams p{beta, gamma, rng.uniform(0.01, gamma)};
    SirState init = SirState::homogeneous(12, 0.0, 0.0);
    for (std::size_t i = 0; i < 12; ++i) {
      init.y[i] = rng.uniform(0.0, 0.5);
      init.s[i] = rng.uniform(0.0, 1.0 - init.y[i]);
    }
    IntegrateOptions o;
    o.t_end = 50.0;
    o.dt = 0.01;
    o.sample_every = 50;
    const auto traj = integrate(m, p, init, o);
    const auto v = linear_lyapunov(traj, spec.left_perron);
    const double rate = beta * spec.lambda_max - gamma;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double bound = v[0] * std::exp(rate * traj.states[k].t);
      EXPECT_LE(v[k], bound * (1 + 1e-8) + 1e-15) << "trial " << trial << " k " << k;
    }
    EXPECT_LT(v.back(), v.front());
  }
}

TEST(LyapunovTest, VolterraValues) {
  const std::vector<double> one{1.0}, half{0.5};
  EXPECT_EQ(volterra_lyapunov(half, half, half, half), 0.0);
  // 0.5 - 1 - ln 0.5.
  EXPECT_NEAR(volterra_lyapunov(half, one, one, one), 0.193147180559945309, 1e-15);
  EXPECT_GT(volterra_lyapunov(half, one, half, half), 0.0);
}

TEST(LyapunovTest, VolterraDomain) {
  const std::vector<double> zero{0.0}, half{0.5};
  EXPECT_THROW(volterra_lyapunov(zero, half, half, half), DomainError);
  EXPECT_THROW(volterra_lyapunov(half, half, half, zero), DomainError);
}

TEST(OmegaTest, InvariantWhenReplenishmentBelowRecovery) {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = random_connected_graph(15, 0.2, 500 + trial);
    std::vector<double> w(g.edge_count());
    for (double& x : w) x = rng.uniform(0.1, 3.0);
    const auto m = ContactMatrix::build(g, WeightField(w), MatrixMode::kRaw);
    const double gamma = rng.uniform(0.05, 0.5);
    const EpidemicParams p{rng.uniform(0.05, 1.0), gamma, rng.uniform(0.001, gamma)};
    SirState init = SirState::homogeneous(15, 0.0, 0.0);
    for (std::size_t i = 0; i < 15; ++i) {
      init.y[i] = rng.uniform(0.0, 1.0);
      init.s[i] = 1.0 - init.y[i];
    }
    IntegrateOptions o;
    o.t_end = 40.0;
    o.dt = 0.01;
    o.sample_every = 10;
    const auto report = omega_monitor(integrate(m, p, init, o));
    EXPECT_LE(report.worst(), 1e-9);
    EXPECT_TRUE(report.clips.empty());
  }
}

TEST(OmegaTest, ExcessOfSingleState) {
  EXPECT_LE(omega_excess({0.0, {0.3, 0.0}, {0.7, 1.0}}), 0.0);
  EXPECT_NEAR(omega_excess({0.0, {0.6}, {0.5}}), 0.1, 1e-15);
  EXPECT_NEAR(omega_excess({0.0, {-0.2}, {0.5}}), 0.2, 1e-15);
}

TEST(MonitorTest, VolterraColumnAndCsv) {
  const auto m = single_node();
  IntegrateOptions o;
  o.t_end = 1.0;
  o.dt = 0.1;
  o.sample_every = 5;
  const auto traj = integrate(m, {0.4, 0.2, 0.1}, SirState::homogeneous(1, 0.9, 0.1), o);
  const std::vector<double> w{1.0}, s_eq{0.5}, y_eq{0.25};
  const auto with = compute_monitors(traj, w, s_eq, y_eq);
  ASSERT_EQ(with.w_volterra.size(), traj.states.size());
  EXPECT_GT(with.w_volterra[0], 0.0);
  const auto without = compute_monitors(traj, w);
  EXPECT_TRUE(without.w_volterra.empty());

  std::ostringstream out;
  write_monitor_csv(without, out);
  std::istringstream lines(out.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "t,V_linear,W_volterra,omega_excess");
  EXPECT_EQ(first.substr(0, 6), "0,0.1,");
  EXPECT_NE(first.find(",,"), std::string::npos);
}

TEST(TrajectoryCsvTest, RoundTripIsExact) {
  const Graph g = random_connected_graph(5, 0.3, 1);
  IntegrateOptions o;
  o.t_end = 2.0;
  o.dt = 0.1;
  o.sample_every = 3;
  const auto traj = integrate(unit_raw(g), {0.3, 0.1, 0.05},
                              SirState::homogeneous(5, 0.95, 0.05), o);
  std::stringstream buf;
  write_trajectory_csv(traj, buf);
  const auto back = read_trajectory_csv(buf);
  ASSERT_EQ(back.states.size(), traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    EXPECT_EQ(back.states[k].t, traj.states[k].t);
    EXPECT_EQ(back.states[k].s, traj.states[k].s);
    EXPECT_EQ(back.states[k].y, traj.states[k].y);
  }
}

TEST(TrajectoryCsvTest, RecoveredColumn) {
  Trajectory traj;
  traj.states.push_back({0.0, {0.5}, {0.25}});
  std::ostringstream out;
  write_trajectory_csv(traj, out, true);
  EXPECT_EQ(out.str(), "t,node,s,y,r\n0,0,0.5,0.25,0.25\n");
}

}  // namespace
}  // namespace curvsir
