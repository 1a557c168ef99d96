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

#ifndef CURVSIR_DYNAMICS_HPP_
#define CURVSIR_DYNAMICS_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "curvsir/contact_matrix.hpp"
#include "curvsir/graph.hpp"

namespace curvsir {

// Rates per unit time, all strictly positive.
struct EpidemicParams {
  double beta = 0.0;   // transmission
  double gamma = 0.0;  // recovery
  double u = 0.0;      // replenishment

  // Throws InvalidArgument unless all three are finite and > 0.
  void validate() const;
};

// Node-level susceptible and infected fractions at time t.
struct SirState {
  double t = 0.0;
  std::vector<double> s;
  std::vector<double> y;

  std::size_t size() const { return s.size(); }
  static SirState homogeneous(std::size_t n, double s0, double y0);
};

// Vector field of the curvature-weighted SIR system:
//   s' = u (1 - s) - beta s ∘ (M y)
//   y' = beta s ∘ (M y) - gamma y
// `force` is scratch of size n and receives M y.
void rhs(std::span<const double> s, std::span<const double> y,
         const ContactMatrix& m, const EpidemicParams& p,
         std::span<double> ds, std::span<double> dy, std::span<double> force);

struct Derivative {
  std::vector<double> ds;
  std::vector<double> dy;
};
Derivative rhs(const SirState& state, const ContactMatrix& m,
               const EpidemicParams& p);

// A state component pushed outside [0, 1] by more than the clip tolerance.
struct ClipEvent {
  std::size_t step = 0;
  double t = 0.0;
  NodeId node = 0;
  char compartment = 's';
  double value = 0.0;
};

struct IntegrateOptions {
  double t_end = 100.0;
  double dt = 0.01;
  // Record every this many steps; the final step is always recorded.
  std::size_t sample_every = 100;
  double clip_tol = 1e-9;
};

struct Trajectory {
  std::vector<SirState> states;
  std::vector<ClipEvent> clips;

  std::size_t node_count() const {
    return states.empty() ? 0 : states.front().size();
  }
  std::vector<double> times() const;
};

// Classical fixed-step RK4. The step count is ceil(t_end / dt) and the
// k-th step ends at k * dt. Throws NumericalError on NaN/Inf with the step
// index, InvalidArgument when the initial state is outside Omega.
Trajectory integrate(const ContactMatrix& m, const EpidemicParams& p,
                     const SirState& initial, const IntegrateOptions& options);

// V(t) = w^T y(t) for each sample.
std::vector<double> linear_lyapunov(const Trajectory& traj,
                                    std::span<const double> left_perron);

// sum_i (x_i - x*_i - x*_i ln(x_i / x*_i)) over both compartments.
// Throws DomainError unless every coordinate is strictly positive.
double volterra_lyapunov(std::span<const double> s, std::span<const double> y,
                         std::span<const double> s_eq,
                         std::span<const double> y_eq);

// Largest violation of each constraint defining Omega over all samples.
// Values <= 0 mean the constraint held.
struct OmegaReport {
  double negative_s = 0.0;  // -min s_i
  double negative_y = 0.0;  // -min y_i
  double s_excess = 0.0;    // max s_i - 1
  double y_excess = 0.0;    // max y_i - 1
  double mass_excess = 0.0; // max (s_i + y_i) - 1
  std::vector<ClipEvent> clips;

  double worst() const;
};

OmegaReport omega_monitor(const Trajectory& traj);
// Single-sample version of OmegaReport::worst().
double omega_excess(const SirState& state);

struct MonitorSeries {
  std::vector<double> times;
  std::vector<double> v_linear;
  // Empty when no endemic equilibrium was supplied.
  std::vector<double> w_volterra;
  std::vector<double> omega_excess;
};

// s_eq / y_eq may be empty; then w_volterra stays empty. Samples that leave
// the open positive orthant get NaN for W.
MonitorSeries compute_monitors(const Trajectory& traj,
                               std::span<const double> left_perron,
                               std::span<const double> s_eq = {},
                               std::span<const double> y_eq = {});

// Long format "t,node,s,y" (plus ",r" with r = 1 - s - y when requested).
void write_trajectory_csv(const Trajectory& traj, std::ostream& out,
                          bool with_recovered = false);
Trajectory read_trajectory_csv(std::istream& in);

// "t,V_linear,W_volterra,omega_excess"; W left blank when unavailable.
void write_monitor_csv(const MonitorSeries& series, std::ostream& out);

}  // namespace curvsir

#endif  // CURVSIR_DYNAMICS_HPP_
