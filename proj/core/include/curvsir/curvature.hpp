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

#ifndef CURVSIR_CURVATURE_HPP_
#define CURVSIR_CURVATURE_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "curvsir/graph.hpp"

namespace curvsir {

enum class CurvatureSource { kForman, kExternal, kSynthetic };

std::string_view to_string(CurvatureSource source);

// Per-edge curvature, aligned with Graph::edges(): values()[k] belongs to
// edges()[k]. The key set therefore always equals the edge set.
class CurvatureField {
 public:
  CurvatureField() = default;
  // Throws if the size does not match the graph or a value is not finite.
  CurvatureField(const Graph& g, std::vector<double> values,
                 CurvatureSource source);

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t edge) const { return values_[edge]; }
  std::size_t size() const { return values_.size(); }
  CurvatureSource source() const { return source_; }
  double mean() const;

  friend bool operator==(const CurvatureField&, const CurvatureField&) = default;

 private:
  std::vector<double> values_;
  CurvatureSource source_ = CurvatureSource::kSynthetic;
};

// Strictly positive finite edge weights, aligned with Graph::edges().
class WeightField {
 public:
  WeightField() = default;
  explicit WeightField(std::vector<double> values);

  // Every edge weighted 1.
  static WeightField unit(const Graph& g);

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t edge) const { return values_[edge]; }
  std::size_t size() const { return values_.size(); }

  // Multiply every weight by c > 0.
  WeightField scaled(double c) const;

 private:
  std::vector<double> values_;
};

// Unweighted combinatorial Forman-Ricci curvature, 4 - deg(i) - deg(j).
CurvatureField forman_curvature(const Graph& g);

// kappa = intra inside a community, inter across communities.
CurvatureField synthetic_field(const Graph& g,
                               const CommunityPartition& partition,
                               double intra, double inter);

CurvatureField constant_field(const Graph& g, double kappa);

// Below this, exp(-kappa) overflows a double.
inline constexpr double kMinCurvature = -700.0;

// w = exp(-kappa). Throws DomainError for kappa < kMinCurvature.
WeightField exp_weight(const CurvatureField& field);

// w <- min(w, 1).
WeightField clamp_unit(const WeightField& weights);

// Curvature text format: "<i> <j> <kappa>" per line, '#' comments, any
// order, each graph edge exactly once.
CurvatureField load_curvature(std::istream& in, const Graph& g);
CurvatureField load_curvature(const std::filesystem::path& path,
                              const Graph& g);
void write_curvature(const CurvatureField& field, const Graph& g,
                     std::ostream& out);
void write_curvature(const CurvatureField& field, const Graph& g,
                     const std::filesystem::path& path);

}  // namespace curvsir

#endif  // CURVSIR_CURVATURE_HPP_
