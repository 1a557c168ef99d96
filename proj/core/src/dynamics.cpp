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

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"

namespace curvsir {

void EpidemicParams::validate() const {
  auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!ok(beta) || !ok(gamma) || !ok(u)) {
    throw InvalidArgument("beta, gamma and u must all be finite and > 0");
  }
}

SirState SirState::homogeneous(std::size_t n, double s0, double y0) {
  return {0.0, std::vector<double>(n, s0), std::vector<double>(n, y0)};
}

void rhs(std::span<const double> s, std::span<const double> y,
         const ContactMatrix& m, const EpidemicParams& p,
         std::span<double> ds, std::span<double> dy, std::span<double> force) {
  m.multiply(y, force);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double incidence = p.beta * s[i] * force[i];
    ds[i] = p.u * (1.0 - s[i]) - incidence;
    dy[i] = incidence - p.gamma * y[i];
  }
}

Derivative rhs(const SirState& state, const ContactMatrix& m,
               const EpidemicParams& p) {
  const std::size_t n = m.size();
  if (state.s.size() != n || state.y.size() != n) {
    throw InvalidArgument("state dimension does not match contact matrix");
  }
  Derivative d{std::vector<double>(n), std::vector<double>(n)};
  std::vector<double> force(n);
  rhs(state.s, state.y, m, p, d.ds, d.dy, force);
  return d;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(states.size());
  for (const auto& st : states) t.push_back(st.t);
  return t;
}

namespace {

void check_initial(const SirState& x, std::size_t n) {
  if (x.s.size() != n || x.y.size() != n) {
    throw InvalidArgument("initial state dimension does not match matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double s = x.s[i];
    const double y = x.y[i];
    if (!(s >= 0.0 && s <= 1.0 && y >= 0.0 && y <= 1.0 && s + y <= 1.0 + 1e-12)) {
      throw InvalidArgument("initial state outside Omega at node " +
                            std::to_string(i));
    }
  }
}

void clip(std::vector<double>& x, char compartment, std::size_t step, double t,
          double tol, std::vector<ClipEvent>& log) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -tol || x[i] > 1.0 + tol) {
      log.push_back({step, t, static_cast<NodeId>(i), compartment, x[i]});
      x[i] = std::clamp(x[i], 0.0, 1.0);
    }
  }
}

}  // namespace

Trajectory integrate(const ContactMatrix& m, const EpidemicParams& p,
                     const SirState& initial, const IntegrateOptions& options) {
  p.validate();
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) {
    throw InvalidArgument("dt must be > 0");
  }
  if (!(options.t_end >= 0.0) || !std::isfinite(options.t_end)) {
    throw InvalidArgument("t_end must be >= 0");
  }
  if (options.sample_every == 0) {
    throw InvalidArgument("sample_every must be >= 1");
  }
  const std::size_t n = m.size();
  check_initial(initial, n);

  const auto steps = static_cast<std::size_t>(
      std::ceil(options.t_end / options.dt * (1.0 - 1e-12)));
  const double h = options.dt;

  Trajectory traj;
  traj.states.reserve(steps / options.sample_every + 2);
  SirState x = initial;
  x.t = 0.0;
  traj.states.push_back(x);

  std::vector<double> k1s(n), k1y(n), k2s(n), k2y(n), k3s(n), k3y(n), k4s(n),
      k4y(n), ts(n), ty(n), force(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    rhs(x.s, x.y, m, p, k1s, k1y, force);
    for (std::size_t i = 0; i < n; ++i) {
      ts[i] = x.s[i] + 0.5 * h * k1s[i];
      ty[i] = x.y[i] + 0.5 * h * k1y[i];
    }
    rhs(ts, ty, m, p, k2s, k2y, force);
    for (std::size_t i = 0; i < n; ++i) {
      ts[i] = x.s[i] + 0.5 * h * k2s[i];
      ty[i] = x.y[i] + 0.5 * h * k2y[i];
    }
    rhs(ts, ty, m, p, k3s, k3y, force);
    for (std::size_t i = 0; i < n; ++i) {
      ts[i] = x.s[i] + h * k3s[i];
      ty[i] = x.y[i] + h * k3y[i];
    }
    rhs(ts, ty, m, p, k4s, k4y, force);
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      x.s[i] += h / 6.0 * (k1s[i] + 2.0 * k2s[i] + 2.0 * k3s[i] + k4s[i]);
      x.y[i] += h / 6.0 * (k1y[i] + 2.0 * k2y[i] + 2.0 * k3y[i] + k4y[i]);
      finite = finite && std::isfinite(x.s[i]) && std::isfinite(x.y[i]);
    }
    x.t = static_cast<double>(step) * h;
    if (!finite) {
      throw NumericalError("non-finite state at step " + std::to_string(step) +
                           " (t = " + format_double(x.t) + ")");
    }
    clip(x.s, 's', step, x.t, options.clip_tol, traj.clips);
    clip(x.y, 'y', step, x.t, options.clip_tol, traj.clips);
    if (step % options.sample_every == 0 || step == steps) {
      traj.states.push_back(x);
    }
  }
  return traj;
}

std::vector<double> linear_lyapunov(const Trajectory& traj,
                                    std::span<const double> left_perron) {
  std::vector<double> v;
  v.reserve(traj.states.size());
  for (const auto& st : traj.states) {
    if (st.y.size() != left_perron.size()) {
      throw InvalidArgument("Perron vector dimension does not match state");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < st.y.size(); ++i) acc += left_perron[i] * st.y[i];
    v.push_back(acc);
  }
  return v;
}

namespace {

double volterra_sum(std::span<const double> x, std::span<const double> x_eq) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(x_eq[i] > 0.0)) {
      throw DomainError("Volterra function needs strictly positive coordinates");
    }
    acc += x[i] - x_eq[i] - x_eq[i] * std::log(x[i] / x_eq[i]);
  }
  return acc;
}

}  // namespace

double volterra_lyapunov(std::span<const double> s, std::span<const double> y,
                         std::span<const double> s_eq,
                         std::span<const double> y_eq) {
  if (s.size() != s_eq.size() || y.size() != y_eq.size() ||
      s.size() != y.size()) {
    throw InvalidArgument("Volterra function: dimension mismatch");
  }
  return volterra_sum(s, s_eq) + volterra_sum(y, y_eq);
}

double OmegaReport::worst() const {
  return std::max({negative_s, negative_y, s_excess, y_excess, mass_excess});
}

namespace {

OmegaReport state_violations(const SirState& st) {
  constexpr double kLow = -std::numeric_limits<double>::infinity();
  OmegaReport r{kLow, kLow, kLow, kLow, kLow, {}};
  for (std::size_t i = 0; i < st.size(); ++i) {
    r.negative_s = std::max(r.negative_s, -st.s[i]);
    r.negative_y = std::max(r.negative_y, -st.y[i]);
    r.s_excess = std::max(r.s_excess, st.s[i] - 1.0);
    r.y_excess = std::max(r.y_excess, st.y[i] - 1.0);
    r.mass_excess = std::max(r.mass_excess, st.s[i] + st.y[i] - 1.0);
  }
  return r;
}

}  // namespace

double omega_excess(const SirState& state) {
  return state_violations(state).worst();
}

OmegaReport omega_monitor(const Trajectory& traj) {
  constexpr double kLow = -std::numeric_limits<double>::infinity();
  OmegaReport r{kLow, kLow, kLow, kLow, kLow, traj.clips};
  for (const auto& st : traj.states) {
    const OmegaReport s = state_violations(st);
    r.negative_s = std::max(r.negative_s, s.negative_s);
    r.negative_y = std::max(r.negative_y, s.negative_y);
    r.s_excess = std::max(r.s_excess, s.s_excess);
    r.y_excess = std::max(r.y_excess, s.y_excess);
    r.mass_excess = std::max(r.mass_excess, s.mass_excess);
  }
  return r;
}

MonitorSeries compute_monitors(const Trajectory& traj,
                               std::span<const double> left_perron,
                               std::span<const double> s_eq,
                               std::span<const double> y_eq) {
  MonitorSeries out;
  out.times = traj.times();
  out.v_linear = linear_lyapunov(traj, left_perron);
  for (const auto& st : traj.states) out.omega_excess.push_back(omega_excess(st));
  if (!s_eq.empty() && !y_eq.empty()) {
    for (const auto& st : traj.states) {
      try {
        out.w_volterra.push_back(volterra_lyapunov(st.s, st.y, s_eq, y_eq));
      } catch (const DomainError&) {
        out.w_volterra.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out,
                          bool with_recovered) {
  out << (with_recovered ? "t,node,s,y,r\n" : "t,node,s,y\n");
  for (const auto& st : traj.states) {
    const std::string t = format_double(st.t);
    for (std::size_t i = 0; i < st.size(); ++i) {
      out << t << ',' << i << ',' << format_double(st.s[i]) << ','
          << format_double(st.y[i]);
      if (with_recovered) out << ',' << format_double(1.0 - st.s[i] - st.y[i]);
      out << '\n';
    }
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file", 1);
  const auto header = trim(line);
  if (header != "t,node,s,y" && header != "t,node,s,y,r") {
    throw ParseError("unexpected header '" + std::string(header) + "'", 1);
  }
  const std::size_t columns = split(header, ',').size();
  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text, ',');
    if (fields.size() != columns) throw ParseError("wrong column count", line_no);
    const auto t = parse_double(fields[0]);
    const auto node = parse_uint(fields[1]);
    const auto s = parse_double(fields[2]);
    const auto y = parse_double(fields[3]);
    if (!t || !node || !s || !y) throw ParseError("bad number", line_no);
    if (*node == 0) traj.states.push_back({*t, {}, {}});
    if (traj.states.empty() || traj.states.back().t != *t ||
        traj.states.back().s.size() != *node) {
      throw ParseError("rows must be grouped by sample with nodes 0..n-1",
                       line_no);
    }
    traj.states.back().s.push_back(*s);
    traj.states.back().y.push_back(*y);
  }
  for (const auto& st : traj.states) {
    if (st.size() != traj.states.front().size()) {
      throw ParseError("samples have differing node counts", 0);
    }
  }
  return traj;
}

void write_monitor_csv(const MonitorSeries& series, std::ostream& out) {
  out << "t,V_linear,W_volterra,omega_excess\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out << format_double(series.times[k]) << ','
        << format_double(series.v_linear[k]) << ',';
    if (k < series.w_volterra.size()) out << format_double(series.w_volterra[k]);
    out << ',' << format_double(series.omega_excess[k]) << '\n';
  }
}

}  // namespace curvsir
