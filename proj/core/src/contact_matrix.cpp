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

#include "curvsir/contact_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"

namespace curvsir {

std::string_view to_string(MatrixMode mode) {
  return mode == MatrixMode::kRaw ? "raw" : "row_stochastic";
}

std::optional<MatrixMode> parse_matrix_mode(std::string_view text) {
  if (text == "raw") return MatrixMode::kRaw;
  if (text == "row_stochastic") return MatrixMode::kRowStochastic;
  return std::nullopt;
}

ContactMatrix ContactMatrix::build(const Graph& g, const WeightField& weights,
                                   MatrixMode mode) {
  if (weights.size() != g.edge_count()) {
    throw InvalidArgument("weight field does not match graph edge count");
  }
  if (!is_connected(g)) {
    throw InvalidArgument(
        "graph is disconnected; the contact matrix would be reducible");
  }
  ContactMatrix m;
  m.n_ = g.node_count();
  m.mode_ = mode;
  m.row_ptr_.assign(m.n_ + 1, 0);
  m.cols_.reserve(2 * g.edge_count());
  m.values_.reserve(2 * g.edge_count());
  for (NodeId i = 0; i < m.n_; ++i) {
    const auto nbrs = g.neighbors(i);
    const auto edge_ids = g.incident_edges(i);
    double row_sum = 0.0;
    for (std::size_t s = 0; s < nbrs.size(); ++s) row_sum += weights[edge_ids[s]];
    if (!(row_sum > 0.0)) {
      throw NumericalError("zero row " + std::to_string(i) +
                           " in contact matrix");
    }
    const double scale = mode == MatrixMode::kRowStochastic ? 1.0 / row_sum : 1.0;
    for (std::size_t s = 0; s < nbrs.size(); ++s) {
      m.cols_.push_back(nbrs[s]);
      m.values_.push_back(weights[edge_ids[s]] * scale);
    }
    m.row_ptr_[i + 1] = m.cols_.size();
  }
  return m;
}

ContactMatrix ContactMatrix::from_triplets(std::size_t n,
                                           std::span<const Triplet> entries,
                                           MatrixMode mode) {
  if (n == 0) throw InvalidArgument("empty contact matrix");
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const Triplet& t : sorted) {
    if (t.row >= n || t.col >= n) {
      throw InvalidArgument("matrix entry out of range");
    }
    if (!(t.value >= 0.0) || !std::isfinite(t.value)) {
      throw InvalidArgument("matrix entries must be finite and >= 0");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k].row == sorted[k - 1].row && sorted[k].col == sorted[k - 1].col) {
      throw InvalidArgument("duplicate matrix entry (" +
                            std::to_string(sorted[k].row) + "," +
                            std::to_string(sorted[k].col) + ")");
    }
  }
  ContactMatrix m;
  m.n_ = n;
  m.mode_ = mode;
  m.row_ptr_.assign(n + 1, 0);
  for (const Triplet& t : sorted) {
    if (t.value == 0.0) continue;
    m.cols_.push_back(t.col);
    m.values_.push_back(t.value);
    ++m.row_ptr_[t.row + 1];
  }
  std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());
  if (mode == MatrixMode::kRowStochastic) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t k = m.row_ptr_[i]; k < m.row_ptr_[i + 1]; ++k) {
        sum += m.values_[k];
      }
      if (!(sum > 0.0)) {
        throw NumericalError("zero row " + std::to_string(i) +
                             " cannot be normalized");
      }
      for (std::size_t k = m.row_ptr_[i]; k < m.row_ptr_[i + 1]; ++k) {
        m.values_[k] /= sum;
      }
    }
  }
  return m;
}

void ContactMatrix::multiply(std::span<const double> x,
                             std::span<double> y) const {
  assert(x.size() == n_ && y.size() == n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      acc += values_[k] * x[cols_[k]];
    }
    y[i] = acc;
  }
}

std::vector<double> ContactMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw InvalidArgument("dimension mismatch in M*x");
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

ContactMatrix ContactMatrix::transpose() const {
  ContactMatrix t;
  t.n_ = n_;
  t.mode_ = mode_;
  t.row_ptr_.assign(n_ + 1, 0);
  for (auto c : cols_) ++t.row_ptr_[c + 1];
  std::partial_sum(t.row_ptr_.begin(), t.row_ptr_.end(), t.row_ptr_.begin());
  t.cols_.resize(cols_.size());
  t.values_.resize(values_.size());
  std::vector<std::size_t> cursor(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  // Rows visited in increasing order keep each transposed row sorted.
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t dst = cursor[cols_[k]]++;
      t.cols_[dst] = static_cast<std::uint32_t>(i);
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

std::vector<double> ContactMatrix::row_sums() const {
  std::vector<double> sums(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      sums[i] += values_[k];
    }
  }
  return sums;
}

double ContactMatrix::max_row_sum() const {
  const auto sums = row_sums();
  return *std::max_element(sums.begin(), sums.end());
}

bool ContactMatrix::is_symmetric(double tol) const {
  const ContactMatrix t = transpose();
  if (t.cols_ != cols_) return false;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (std::abs(values_[k] - t.values_[k]) > tol) return false;
  }
  return true;
}

namespace {

bool reaches_all(const ContactMatrix& m) {
  const std::size_t n = m.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (auto j : m.row_cols(i)) {
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == n;
}

}  // namespace

bool ContactMatrix::is_irreducible() const {
  return reaches_all(*this) && reaches_all(transpose());
}

std::vector<Triplet> ContactMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      out.push_back({static_cast<std::uint32_t>(i), cols_[k], values_[k]});
    }
  }
  return out;
}

void write_matrix(const ContactMatrix& m, std::ostream& out) {
  for (const Triplet& t : m.triplets()) {
    out << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  }
}

}  // namespace curvsir
