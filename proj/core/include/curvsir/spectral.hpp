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

#ifndef CURVSIR_SPECTRAL_HPP_
#define CURVSIR_SPECTRAL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "curvsir/contact_matrix.hpp"
#include "curvsir/curvature.hpp"
#include "curvsir/error.hpp"
#include "curvsir/graph.hpp"

namespace curvsir {

struct SpectralOptions {
  // Bound on ||M v - lambda v||_inf with ||v||_inf = 1. Floored at the
  // rounding level of ||M||_inf.
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

// Perron data of an irreducible nonnegative matrix.
struct SpectralReport {
  double lambda_max = 0.0;
  // Positive, unit Euclidean norm.
  std::vector<double> right_perron;
  std::vector<double> left_perron;
  // Right and left iterations combined.
  std::size_t iterations = 0;
  // max of the right and left residuals.
  double residual = 0.0;
};

class SpectralConvergenceError : public NumericalError {
 public:
  SpectralConvergenceError(double lambda_estimate, std::size_t iterations,
                           double residual);
  double lambda_estimate() const { return lambda_estimate_; }
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  double lambda_estimate_;
  std::size_t iterations_;
  double residual_;
};

// Power iteration on M + sI, s = max(1, min(||M||_inf, ||M||_1) / 2), from
// the all-ones vector with max-norm normalization. The shift makes the
// iteration primitive, so bipartite patterns converge too. The left vector
// is the same procedure on M^T.
SpectralReport spectral_radius(const ContactMatrix& m,
                               const SpectralOptions& options = {});

// (beta / gamma) * lambda_max(M).
double basic_reproduction_number(const ContactMatrix& m, double beta,
                                 double gamma,
                                 const SpectralOptions& options = {});

struct SpectralReductionResult {
  double lambda_weighted = 0.0;
  double lambda_unweighted = 0.0;
  bool holds = false;
};

// Compares lambda_max(A∘W) with lambda_max(A) in raw mode. Weights must lie
// in (0, 1]; use clamp_unit first.
SpectralReductionResult spectral_reduction_check(
    const Graph& g, const WeightField& weights,
    const SpectralOptions& options = {});

// kappa* = -ln((gamma / beta) * n / (2|E|)).
double kappa_star(double beta, double gamma, std::size_t node_count,
                  std::size_t edge_count);

// Curvature threshold analysis for raw weights w = exp(-kappa).
struct ThresholdReport {
  double mean_curvature = 0.0;
  double kappa_star = 0.0;
  // max_i d_i(kappa), d_i(kappa) = sum_j exp(-kappa_ij). Gershgorin bound.
  double degree_bound = 0.0;
  // (2|E| / n) * mean_e exp(-kappa_e): the average weighted degree.
  double mean_weighted_degree = 0.0;
  // (2|E| / n) * exp(-mean curvature). Jensen bound on the average degree.
  double jensen_bound = 0.0;
  double r0_upper = 0.0;
  bool suppressed = false;

  double lambda_max = 0.0;
  double r0 = 0.0;
  // lambda_max <= degree_bound.
  bool gershgorin_holds = false;
  // lambda_max <= jensen_bound. Not guaranteed for non-regular graphs.
  bool averaged_bound_holds = false;
};

ThresholdReport geometric_threshold(const Graph& g,
                                    const CurvatureField& field, double beta,
                                    double gamma,
                                    const SpectralOptions& options = {});

std::string to_json(const SpectralReport& report);
std::string to_json(const ThresholdReport& report);

}  // namespace curvsir

#endif  // CURVSIR_SPECTRAL_HPP_
