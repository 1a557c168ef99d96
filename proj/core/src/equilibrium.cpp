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
#include <limits>
#include <utility>

#include "curvsir/io_util.hpp"
#include "json_reports.hpp"

namespace curvsir {

void apply_T(std::span<const double> y, const ContactMatrix& m,
             const EpidemicParams& p, std::span<double> out,
             std::span<double> scratch) {
  m.multiply(y, scratch);
  const double ratio = p.beta / p.gamma;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = scratch[i];
    out[i] = ratio * (p.u / (p.u + p.beta * x)) * x;
  }
}

std::vector<double> apply_T(std::span<const double> y, const ContactMatrix& m,
                            const EpidemicParams& p) {
  p.validate();
  if (y.size() != m.size()) throw InvalidArgument("apply_T: dimension mismatch");
  for (double v : y) {
    if (!(v >= 0.0)) throw InvalidArgument("apply_T needs y >= 0");
  }
  std::vector<double> out(y.size());
  std::vector<double> scratch(y.size());
  apply_T(y, m, p, out, scratch);
  return out;
}

std::size_t EquilibriumReport::order_violations() const {
  return static_cast<std::size_t>(std::count_if(
      monotone_certificate.begin(), monotone_certificate.end(),
      [](const MonotoneStep& s) {
        return !s.lower_nondecreasing || !s.upper_nonincreasing;
      }));
}

NoEndemicEquilibrium::NoEndemicEquilibrium(double r0)
    : NumericalError("no endemic equilibrium: R0 = " + format_double(r0) +
                     " <= 1"),
      r0_(r0) {}

namespace {

double max_gap(std::span<const double> a, std::span<const double> b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

EquilibriumReport iterate_bracket(const ContactMatrix& m,
                                  const EpidemicParams& p,
                                  std::vector<double> lower,
                                  std::vector<double> upper,
                                  const EquilibriumOptions& options) {
  const std::size_t n = m.size();
  std::vector<double> next_lower(n), next_upper(n), scratch(n);
  EquilibriumReport report;
  double width = max_gap(lower, upper);
  std::size_t it = 0;
  while (width > options.tol) {
    if (it == options.max_iter) {
      throw NumericalError("endemic solve: bracket width " +
                           format_double(width) + " after " +
                           std::to_string(it) + " iterations");
    }
    apply_T(lower, m, p, next_lower, scratch);
    apply_T(upper, m, p, next_upper, scratch);
    MonotoneStep step;
    for (std::size_t i = 0; i < n; ++i) {
      if (next_lower[i] < lower[i] - options.order_slack) {
        step.lower_nondecreasing = false;
      }
      if (next_upper[i] > upper[i] + options.order_slack) {
        step.upper_nonincreasing = false;
      }
    }
    report.monotone_certificate.push_back(step);
    std::swap(lower, next_lower);
    std::swap(upper, next_upper);
    width = max_gap(lower, upper);
    ++it;
  }

  report.iterations = it;
  report.bracket_width = width;
  report.y_dagger.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.y_dagger[i] = 0.5 * (lower[i] + upper[i]);
  }
  m.multiply(report.y_dagger, scratch);
  report.s_dagger.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.s_dagger[i] = p.u / (p.u + p.beta * scratch[i]);
  }
  apply_T(report.y_dagger, m, p, next_lower, scratch);
  report.fixed_point_residual = max_gap(next_lower, report.y_dagger);
  return report;
}

void check_bracket(const ContactMatrix& m, const EpidemicParams& p,
                   std::span<const double> lower,
                   std::span<const double> upper) {
  const auto t_lower = apply_T(lower, m, p);
  const auto t_upper = apply_T(upper, m, p);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw NumericalError("bracket: lower exceeds upper at node " +
                           std::to_string(i));
    }
    if (t_lower[i] < lower[i]) {
      throw NumericalError("bracket: lower start is not a subsolution");
    }
    if (t_upper[i] > upper[i]) {
      throw NumericalError("bracket: upper start is not a supersolution");
    }
  }
}

}  // namespace

EquilibriumReport solve_endemic(const ContactMatrix& m, const EpidemicParams& p,
                                const EquilibriumOptions& options) {
  p.validate();
  const SpectralReport spectrum = spectral_radius(m, options.spectral);
  const double r0 = p.beta / p.gamma * spectrum.lambda_max;
  if (!(r0 > 1.0)) throw NoEndemicEquilibrium(r0);

  const std::size_t n = m.size();
  std::vector<double> v = spectrum.right_perron;
  const double v_max = *std::max_element(v.begin(), v.end());
  for (double& x : v) x /= v_max;

  // Smallest alpha tried is 1e-3 * 2^-200; well below any usable R0 - 1.
  constexpr int kMaxHalvings = 200;
  double alpha = 1e-3;
  std::vector<double> lower(n), t_lower(n), scratch(n);
  bool found = false;
  for (int h = 0; h <= kMaxHalvings; ++h, alpha *= 0.5) {
    for (std::size_t i = 0; i < n; ++i) lower[i] = alpha * v[i];
    apply_T(lower, m, p, t_lower, scratch);
    bool strict = true;
    for (std::size_t i = 0; i < n && strict; ++i) strict = t_lower[i] > lower[i];
    if (strict) {
      found = true;
      break;
    }
  }
  if (!found) {
    throw NumericalError("bracket: no alpha with T(alpha v) > alpha v");
  }

  const double ceiling = p.u / p.gamma;
  const bool capped = ceiling * (1.0 + 1e-9) >= 1.0;
  const double level = capped ? 1.0 : ceiling * (1.0 + 1e-9);
  std::vector<double> upper(n, level);
  {
    std::vector<double> t_upper(n);
    apply_T(upper, m, p, t_upper, scratch);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(t_upper[i] < upper[i])) {
        throw NumericalError(
            "bracket: T(1) exceeds 1 at node " + std::to_string(i) +
            "; the fixed point leaves the unit box (u / gamma > 1)");
      }
      if (lower[i] > upper[i]) {
        throw NumericalError("bracket: lower start above upper start");
      }
    }
  }

  EquilibriumReport report =
      iterate_bracket(m, p, std::move(lower), std::move(upper), options);
  report.r0 = r0;
  report.alpha = alpha;
  report.upper_level = level;
  report.upper_capped = capped;
  return report;
}

EquilibriumReport solve_endemic_from(const ContactMatrix& m,
                                     const EpidemicParams& p,
                                     std::vector<double> lower,
                                     std::vector<double> upper,
                                     const EquilibriumOptions& options) {
  p.validate();
  if (lower.size() != m.size() || upper.size() != m.size()) {
    throw InvalidArgument("bracket dimension does not match matrix");
  }
  const double r0 =
      p.beta / p.gamma * spectral_radius(m, options.spectral).lambda_max;
  if (!(r0 > 1.0)) throw NoEndemicEquilibrium(r0);
  check_bracket(m, p, lower, upper);
  EquilibriumReport report =
      iterate_bracket(m, p, std::move(lower), std::move(upper), options);
  report.r0 = r0;
  return report;
}

namespace {

OdeDeviation deviation_from(const ContactMatrix& m, const EpidemicParams& p,
                            const CrossCheckOptions& options,
                            std::span<const double> s_target,
                            std::span<const double> y_target) {
  IntegrateOptions io;
  io.t_end = options.t_end;
  io.dt = options.dt;
  io.sample_every = std::numeric_limits<std::size_t>::max();
  const Trajectory traj = integrate(
      m, p, SirState::homogeneous(m.size(), options.s0, options.y0), io);
  const SirState& last = traj.states.back();
  return {max_gap(last.y, y_target), max_gap(last.s, s_target)};
}

}  // namespace

OdeDeviation cross_check_ode(const EquilibriumReport& report,
                             const ContactMatrix& m, const EpidemicParams& p,
                             const CrossCheckOptions& options) {
  if (report.y_dagger.size() != m.size()) {
    throw InvalidArgument("equilibrium dimension does not match matrix");
  }
  return deviation_from(m, p, options, report.s_dagger, report.y_dagger);
}

OdeDeviation cross_check_dfe(const ContactMatrix& m, const EpidemicParams& p,
                             const CrossCheckOptions& options) {
  const std::vector<double> ones(m.size(), 1.0);
  const std::vector<double> zeros(m.size(), 0.0);
  return deviation_from(m, p, options, ones, zeros);
}

namespace detail {

nlohmann::ordered_json equilibrium_json(const EquilibriumReport& r) {
  return {{"y_dagger", r.y_dagger},
          {"s_dagger", r.s_dagger},
          {"iterations", r.iterations},
          {"bracket_width", r.bracket_width},
          {"r0", r.r0},
          {"monotone_ok", r.monotone_ok()},
          {"order_violations", r.order_violations()},
          {"fixed_point_residual", r.fixed_point_residual},
          {"upper_capped", r.upper_capped}};
}

}  // namespace detail

std::string to_json(const EquilibriumReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = detail::kSchemaVersion;
  j.update(detail::equilibrium_json(report));
  return j.dump(2);
}

}  // namespace curvsir
