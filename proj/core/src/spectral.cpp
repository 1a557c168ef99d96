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

#include "curvsir/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "curvsir/io_util.hpp"
#include "json_reports.hpp"

namespace curvsir {

SpectralConvergenceError::SpectralConvergenceError(double lambda_estimate,
                                                   std::size_t iterations,
                                                   double residual)
    : NumericalError("power iteration did not converge after " +
                     std::to_string(iterations) + " iterations (lambda ~ " +
                     format_double(lambda_estimate) +
                     ", residual " + format_double(residual) + ")"),
      lambda_estimate_(lambda_estimate),
      iterations_(iterations),
      residual_(residual) {}

namespace {

struct PowerResult {
  double lambda = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

PowerResult power_iterate(const ContactMatrix& m,
                          const SpectralOptions& options) {
  const std::size_t n = m.size();
  const double norm_inf = m.max_row_sum();
  const double tol = std::max(
      options.tol,
      64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, norm_inf));
  // A unit shift is lost in rounding once ||M|| is large, so scale it.
  // min(||M||_inf, ||M||_1) bounds lambda and is the same for M^T.
  std::vector<double> col_sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) col_sums[cols[k]] += vals[k];
  }
  const double norm_1 = *std::max_element(col_sums.begin(), col_sums.end());
  const double shift = std::max(1.0, 0.5 * std::min(norm_inf, norm_1));
  std::vector<double> x(n, 1.0);
  std::vector<double> mx(n);
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    m.multiply(x, mx);
    const double xx = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    const double xmx = std::inner_product(x.begin(), x.end(), mx.begin(), 0.0);
    lambda = xmx / xx;
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(mx[i] - lambda * x[i]));
    }
    if (residual <= tol) {
      const double norm = std::sqrt(xx);
      for (double& v : x) v /= norm;
      return {lambda, std::move(x), it, residual};
    }
    // x <- (M + shift I) x, rescaled to unit max-norm.
    for (std::size_t i = 0; i < n; ++i) mx[i] += shift * x[i];
    const double scale = max_abs(mx);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw NumericalError("power iteration produced a non-finite vector");
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = mx[i] / scale;
  }
  throw SpectralConvergenceError(lambda, options.max_iter, residual);
}

}  // namespace

SpectralReport spectral_radius(const ContactMatrix& m,
                               const SpectralOptions& options) {
  if (m.size() == 0) throw InvalidArgument("spectral_radius: empty matrix");
  PowerResult right = power_iterate(m, options);
  PowerResult left = power_iterate(m.transpose(), options);
  SpectralReport report;
  report.lambda_max = right.lambda;
  report.right_perron = std::move(right.vector);
  report.left_perron = std::move(left.vector);
  report.iterations = right.iterations + left.iterations;
  report.residual = std::max(right.residual, left.residual);
  return report;
}

double basic_reproduction_number(const ContactMatrix& m, double beta,
                                 double gamma, const SpectralOptions& options) {
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw InvalidArgument("beta and gamma must be > 0");
  }
  return beta / gamma * spectral_radius(m, options).lambda_max;
}

SpectralReductionResult spectral_reduction_check(
    const Graph& g, const WeightField& weights,
    const SpectralOptions& options) {
  for (double w : weights.values()) {
    if (w > 1.0) {
      throw InvalidArgument("spectral reduction needs weights in (0, 1]");
    }
  }
  SpectralReductionResult r;
  r.lambda_weighted =
      spectral_radius(ContactMatrix::build(g, weights, MatrixMode::kRaw),
                      options)
          .lambda_max;
  r.lambda_unweighted =
      spectral_radius(
          ContactMatrix::build(g, WeightField::unit(g), MatrixMode::kRaw),
          options)
          .lambda_max;
  r.holds = r.lambda_weighted <= r.lambda_unweighted + 1e-9;
  return r;
}

double kappa_star(double beta, double gamma, std::size_t node_count,
                  std::size_t edge_count) {
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw InvalidArgument("beta and gamma must be > 0");
  }
  if (edge_count == 0) throw InvalidArgument("kappa_star: graph has no edges");
  return -std::log(gamma / beta * static_cast<double>(node_count) /
                   (2.0 * static_cast<double>(edge_count)));
}

ThresholdReport geometric_threshold(const Graph& g,
                                    const CurvatureField& field, double beta,
                                    double gamma,
                                    const SpectralOptions& options) {
  const std::size_t n = g.node_count();
  const std::size_t edges = g.edge_count();
  ThresholdReport r;
  r.kappa_star = kappa_star(beta, gamma, n, edges);
  r.mean_curvature = field.mean();

  const WeightField w = exp_weight(field);
  std::vector<double> weighted_degree(n, 0.0);
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < edges; ++k) {
    const Edge e = g.edges()[k];
    weighted_degree[e.u] += w[k];
    weighted_degree[e.v] += w[k];
    weight_sum += w[k];
  }
  const double density = 2.0 * static_cast<double>(edges) / static_cast<double>(n);
  r.degree_bound = *std::max_element(weighted_degree.begin(), weighted_degree.end());
  r.mean_weighted_degree = 2.0 * weight_sum / static_cast<double>(n);
  r.jensen_bound = density * std::exp(-r.mean_curvature);
  r.r0_upper = beta / gamma * r.jensen_bound;
  r.suppressed = r.mean_curvature > r.kappa_star;

  const ContactMatrix m = ContactMatrix::build(g, w, MatrixMode::kRaw);
  r.lambda_max = spectral_radius(m, options).lambda_max;
  r.r0 = beta / gamma * r.lambda_max;
  const double slack = 1e-12 * std::max(1.0, r.degree_bound);
  r.gershgorin_holds = r.lambda_max <= r.degree_bound + slack;
  r.averaged_bound_holds = r.lambda_max <= r.jensen_bound + slack;
  return r;
}

namespace detail {

nlohmann::ordered_json spectral_json(const SpectralReport& r) {
  return {{"lambda_max", r.lambda_max},
          {"right_perron", r.right_perron},
          {"left_perron", r.left_perron},
          {"iterations", r.iterations},
          {"residual", r.residual}};
}

nlohmann::ordered_json threshold_json(const ThresholdReport& r) {
  return {{"mean_curvature", r.mean_curvature},
          {"kappa_star", r.kappa_star},
          {"degree_bound", r.degree_bound},
          {"mean_weighted_degree", r.mean_weighted_degree},
          {"jensen_bound", r.jensen_bound},
          {"r0_upper", r.r0_upper},
          {"suppressed", r.suppressed},
          {"lambda_max", r.lambda_max},
          {"r0", r.r0},
          {"gershgorin_holds", r.gershgorin_holds},
          {"averaged_bound_holds", r.averaged_bound_holds}};
}

}  // namespace detail

std::string to_json(const SpectralReport& report) {
  auto j = detail::spectral_json(report);
  j["schema_version"] = detail::kSchemaVersion;
  return j.dump(2);
}

std::string to_json(const ThresholdReport& report) {
  auto j = detail::threshold_json(report);
  j["schema_version"] = detail::kSchemaVersion;
  return j.dump(2);
}

}  // namespace curvsir
