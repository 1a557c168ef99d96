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

#include "curvsir/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"

namespace curvsir {

std::string_view to_string(CurvatureSource source) {
  switch (source) {
    case CurvatureSource::kForman:
      return "forman";
    case CurvatureSource::kExternal:
      return "external";
    case CurvatureSource::kSynthetic:
      return "synthetic";
  }
  return "unknown";
}

CurvatureField::CurvatureField(const Graph& g, std::vector<double> values,
                               CurvatureSource source)
    : values_(std::move(values)), source_(source) {
  if (values_.size() != g.edge_count()) {
    throw InvalidArgument("curvature field has " +
                          std::to_string(values_.size()) + " values for " +
                          std::to_string(g.edge_count()) + " edges");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      const Edge e = g.edges()[k];
      throw InvalidArgument("non-finite curvature on edge (" +
                            std::to_string(e.u) + "," + std::to_string(e.v) +
                            ")");
    }
  }
}

double CurvatureField::mean() const {
  if (values_.empty()) throw InvalidArgument("mean of empty curvature field");
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

WeightField::WeightField(std::vector<double> values)
    : values_(std::move(values)) {
  for (double w : values_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("edge weights must be finite and > 0");
    }
  }
}

WeightField WeightField::unit(const Graph& g) {
  return WeightField(std::vector<double>(g.edge_count(), 1.0));
}

WeightField WeightField::scaled(double c) const {
  std::vector<double> out(values_);
  for (double& w : out) w *= c;
  return WeightField(std::move(out));
}

CurvatureField forman_curvature(const Graph& g) {
  std::vector<double> kappa;
  kappa.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    kappa.push_back(4.0 - static_cast<double>(g.degree(e.u)) -
                    static_cast<double>(g.degree(e.v)));
  }
  return CurvatureField(g, std::move(kappa), CurvatureSource::kForman);
}

CurvatureField synthetic_field(const Graph& g,
                               const CommunityPartition& partition,
                               double intra, double inter) {
  if (partition.node_count() != g.node_count()) {
    throw InvalidArgument("partition covers " +
                          std::to_string(partition.node_count()) +
                          " nodes, graph has " +
                          std::to_string(g.node_count()));
  }
  std::vector<double> kappa;
  kappa.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    kappa.push_back(partition.label(e.u) == partition.label(e.v) ? intra
                                                                 : inter);
  }
  return CurvatureField(g, std::move(kappa), CurvatureSource::kSynthetic);
}

CurvatureField constant_field(const Graph& g, double kappa) {
  return CurvatureField(g, std::vector<double>(g.edge_count(), kappa),
                        CurvatureSource::kSynthetic);
}

WeightField exp_weight(const CurvatureField& field) {
  std::vector<double> w;
  w.reserve(field.size());
  for (double kappa : field.values()) {
    if (kappa < kMinCurvature) {
      throw DomainError("curvature " + format_double(kappa) +
                        " below -700: exp(-kappa) overflows");
    }
    w.push_back(std::exp(-kappa));
  }
  return WeightField(std::move(w));
}

WeightField clamp_unit(const WeightField& weights) {
  std::vector<double> w(weights.values().begin(), weights.values().end());
  for (double& x : w) x = std::min(x, 1.0);
  return WeightField(std::move(w));
}

CurvatureField load_curvature(std::istream& in, const Graph& g) {
  std::vector<std::optional<double>> kappa(g.edge_count());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto tokens = split_whitespace(text);
    if (tokens.size() != 3) {
      throw ParseError("expected '<i> <j> <kappa>'", line_no);
    }
    const auto i = parse_uint(tokens[0]);
    const auto j = parse_uint(tokens[1]);
    const auto value = parse_double(tokens[2]);
    if (!i || !j || !value) {
      throw ParseError("cannot parse '" + std::string(text) + "'", line_no);
    }
    if (!std::isfinite(*value)) {
      throw ParseError("non-finite curvature", line_no);
    }
    const std::string edge_name =
        "(" + std::to_string(std::min(*i, *j)) + "," +
        std::to_string(std::max(*i, *j)) + ")";
    std::optional<std::size_t> k;
    if (*i < g.node_count() && *j < g.node_count()) {
      k = g.find_edge(static_cast<NodeId>(*i), static_cast<NodeId>(*j));
    }
    if (!k) throw ParseError("unknown edge " + edge_name, line_no);
    if (kappa[*k]) {
      throw ParseError("edge " + edge_name + " listed twice", line_no);
    }
    kappa[*k] = *value;
  }
  std::vector<double> values;
  values.reserve(kappa.size());
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    if (!kappa[k]) {
      const Edge e = g.edges()[k];
      throw ParseError("missing edge (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")",
                       0);
    }
    values.push_back(*kappa[k]);
  }
  return CurvatureField(g, std::move(values), CurvatureSource::kExternal);
}

CurvatureField load_curvature(const std::filesystem::path& path,
                              const Graph& g) {
  auto in = open_input(path);
  return load_curvature(in, g);
}

void write_curvature(const CurvatureField& field, const Graph& g,
                     std::ostream& out) {
  if (field.size() != g.edge_count()) {
    throw InvalidArgument("curvature field does not match graph");
  }
  for (std::size_t k = 0; k < field.size(); ++k) {
    const Edge e = g.edges()[k];
    out << e.u << ' ' << e.v << ' ' << format_double(field[k]) << '\n';
  }
}

void write_curvature(const CurvatureField& field, const Graph& g,
                     const std::filesystem::path& path) {
  auto out = open_output(path);
  write_curvature(field, g, out);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace curvsir
