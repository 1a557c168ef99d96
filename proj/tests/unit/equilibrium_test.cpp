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

#include "curvsir/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "curvsir/random.hpp"

namespace curvsir {
namespace {

ContactMatrix single_node() {
  const std::vector<Triplet> e{{0, 0, 1.0}};
  return ContactMatrix::from_triplets(1, e, MatrixMode::kRaw);
}

ContactMatrix random_raw(std::size_t n, std::uint64_t seed, Rng& rng) {
  const Graph g = random_connected_graph(n, 0.2, seed);
  std::vector<double> w(g.edge_count());
  for (double& x : w) x = rng.uniform(0.2, 2.0);
  return ContactMatrix::build(g, WeightField(w), MatrixMode::kRaw);
}

// Supercritical parameters for m with u < gamma.
EpidemicParams supercritical(const ContactMatrix& m, Rng& rng) {
  const double lambda = spectral_radius(m).lambda_max;
  const double gamma = rng.uniform(0.1, 0.4);
  return {rng.uniform(1.5, 6.0) * gamma / lambda, gamma, rng.uniform(0.01, gamma)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(OperatorTTest, ZeroIsFixed) {
  Rng rng(1);
  const auto m = random_raw(10, 1, rng);
  for (double v : apply_T(std::vector<double>(10, 0.0), m, {0.3, 0.1, 0.05})) EXPECT_EQ(v, 0.0);
}

TEST(OperatorTTest, SingleNodeFixedPoint) {
  const std::vector<double> y{0.25};
  EXPECT_NEAR(apply_T(y, single_node(), {0.4, 0.2, 0.1})[0], 0.25, 1e-15);
}

TEST(OperatorTTest, SmallAmplitudeRatioApproachesR0) {
  Rng rng(3);
  const auto m = random_raw(12, 3, rng);
  const EpidemicParams p{0.2, 0.15, 0.05};
  const auto spec = spectral_radius(m);
  const double r0 = p.beta / p.gamma * spec.lambda_max;
  std::vector<double> y(spec.right_perron);
  for (double& v : y) v *= 1e-9;
  const auto t = apply_T(y, m, p);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(t[i] / y[i], r0, 1e-6 * r0);
}

TEST(OperatorTTest, MonotoneInTheOrder) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_raw(10, 100 + trial, rng);
    const EpidemicParams p{rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0), rng.uniform(0.01, 0.5)};
    std::vector<double> lo(10), hi(10);
    for (std::size_t i = 0; i < 10; ++i) {
      lo[i] = rng.uniform(0.0, 1.0);
      hi[i] = lo[i] + rng.uniform(0.0, 1.0 - lo[i]);
    }
    const auto tl = apply_T(lo, m, p), th = apply_T(hi, m, p);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_LE(tl[i], th[i] + 1e-15);
  }
}

TEST(EquilibriumTest, SingleNode) {
  const auto r = solve_endemic(single_node(), {0.4, 0.2, 0.1});
  EXPECT_NEAR(r.y_dagger[0], 0.25, 1e-10);
  EXPECT_NEAR(r.s_dagger[0], 0.5, 1e-10);
  EXPECT_NEAR(r.r0, 2.0, 1e-12);
  EXPECT_TRUE(r.monotone_ok());
  EXPECT_LE(r.bracket_width, 1e-10);
}

TEST(EquilibriumTest, RowStochasticGivesConstantProfile) {
  const Graph g = random_connected_graph(15, 0.2, 6);
  Rng rng(6);
  std::vector<double> w(g.edge_count());
  for (double& x : w) x = rng.uniform(0.1, 3.0);
  const auto m = ContactMatrix::build(g, WeightField(w), MatrixMode::kRowStochastic);
  const auto r = solve_endemic(m, {0.4, 0.2, 0.1});
  for (std::size_t i = 0; i < 15; ++i) {
    EXPECT_NEAR(r.y_dagger[i], 0.25, 1e-9);
    EXPECT_NEAR(r.s_dagger[i], 0.5, 1e-9);
  }
}

TEST(EquilibriumTest, SubcriticalHasNoEndemicState) {
  const Graph k5 = complete_graph(5);
  const auto m = ContactMatrix::build(k5, WeightField::unit(k5), MatrixMode::kRaw);
  try {
    solve_endemic(m, {0.1, 0.5, 0.1});
    FAIL() << "expected NoEndemicEquilibrium";
  } catch (const NoEndemicEquilibrium& e) {
    EXPECT_NEAR(e.r0(), 0.8, 1e-12);
  }
}

TEST(EquilibriumTest, StationaryAndCertified) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const auto m = random_raw(n, 200 + trial, rng);
    const auto p = supercritical(m, rng);
    const auto r = solve_endemic(m, p);
    EXPECT_TRUE(r.monotone_ok()) << "trial " << trial;
    EXPECT_EQ(r.monotone_certificate.size(), r.iterations);
    EXPECT_LE(r.bracket_width, 1e-10);
    EXPECT_LE(r.fixed_point_residual, 1e-10);
    EXPECT_GT(r.r0, 1.0);
    SirState st{0.0, r.s_dagger, r.y_dagger};
    const auto d = rhs(st, m, p);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(r.y_dagger[i], 0.0);
      EXPECT_LE(r.y_dagger[i], 1.0);
      EXPECT_NEAR(d.ds[i], 0.0, 1e-10);
      EXPECT_NEAR(d.dy[i], 0.0, 1e-10);
    }
  }
}

TEST(EquilibriumTest, UniqueAcrossBrackets) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_raw(12, 400 + trial, rng);
    const auto p = supercritical(m, rng);
    const auto ref = solve_endemic(m, p);
    const auto v = spectral_radius(m).right_perron;
    const double vmax = *std::max_element(v.begin(), v.end());
    for (int k = 0; k < 5; ++k) {
      // Small multiples of v are subsolutions; any constant >= u / gamma is a
      // supersolution.
      std::vector<double> lower(v);
      const double scale = ref.alpha * std::pow(0.5, k) / vmax;
      for (double& x : lower) x *= scale;
      const std::vector<double> upper(12, p.u / p.gamma * (1.0 + 0.3 * k));
      const auto r = solve_endemic_from(m, p, lower, upper);
      EXPECT_LE(max_abs_diff(r.y_dagger, ref.y_dagger), 1e-9);
    }
  }
}

TEST(EquilibriumTest, RejectsInvalidBracket) {
  const auto m = single_node();
  const EpidemicParams p{0.4, 0.2, 0.1};
  // T(0.5) < 0.5, so 0.5 is not a subsolution.
  EXPECT_THROW(solve_endemic_from(m, p, {0.5}, {1.0}), NumericalError);
  EXPECT_THROW(solve_endemic_from(m, p, {0.1}, {0.05}), NumericalError);
}

TEST(EquilibriumTest, UpperCapWhenReplenishmentExceedsRecovery) {
  // y* = u (1 - gamma / beta) / gamma = 0.625 with u / gamma = 1.25.
  const auto r = solve_endemic(single_node(), {0.4, 0.2, 0.25});
  EXPECT_TRUE(r.upper_capped);
  EXPECT_EQ(r.upper_level, 1.0);
  EXPECT_NEAR(r.y_dagger[0], 0.625, 1e-10);
  EXPECT_NEAR(r.s_dagger[0], 0.5, 1e-10);
}

TEST(EquilibriumTest, EndemicStateOutsideUnitBoxIsReported) {
  // y* = 1.5: T(1) > 1, so no supersolution exists in [0, 1].
  EXPECT_THROW(solve_endemic(single_node(), {0.8, 0.2, 0.4}), NumericalError);
}

TEST(EquilibriumTest, OdeConvergesToFixedPoint) {
  Rng rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const auto m = random_raw(8, 600 + trial, rng);
    const auto p = supercritical(m, rng);
    const auto r = solve_endemic(m, p);
    const auto dev = cross_check_ode(r, m, p);
    EXPECT_LE(dev.y_deviation, 1e-6) << "trial " << trial;
    EXPECT_LE(dev.s_deviation, 1e-6) << "trial " << trial;
  }
}

TEST(EquilibriumTest, SubcriticalOdeApproachesDiseaseFree) {
  const Graph k5 = complete_graph(5);
  const auto m = ContactMatrix::build(k5, WeightField::unit(k5), MatrixMode::kRaw);
  CrossCheckOptions o;
  o.t_end = 500.0;
  const auto dev = cross_check_dfe(m, {0.1, 0.5, 0.1}, o);
  EXPECT_LE(dev.y_deviation, 1e-6);
  EXPECT_LE(dev.s_deviation, 1e-6);
}

TEST(EquilibriumTest, JsonKeys) {
  const auto json = to_json(solve_endemic(single_node(), {0.4, 0.2, 0.1}));
  for (const char* key : {"schema_version", "y_dagger", "s_dagger", "iterations",
                          "bracket_width", "r0", "monotone_ok"}) {
    EXPECT_NE(json.find('"' + std::string(key) + '"'), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace curvsir
