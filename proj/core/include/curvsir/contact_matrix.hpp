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

#ifndef CURVSIR_CONTACT_MATRIX_HPP_
#define CURVSIR_CONTACT_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "curvsir/curvature.hpp"
#include "curvsir/graph.hpp"

namespace curvsir {

// kRaw: m_ij = w_ij (the Hadamard product A∘W, symmetric).
// kRowStochastic: m_ij = w_ij / sum_k w_ik, unit row sums.
enum class MatrixMode { kRaw, kRowStochastic };

std::string_view to_string(MatrixMode mode);
std::optional<MatrixMode> parse_matrix_mode(std::string_view text);

struct Triplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;
};

// Nonnegative sparse operator in CSR form. Immutable after construction.
class ContactMatrix {
 public:
  ContactMatrix() = default;

  // Graph must be connected and the weights must cover every edge. The
  // sparsity pattern is exactly the adjacency pattern of g.
  static ContactMatrix build(const Graph& g, const WeightField& weights,
                             MatrixMode mode);

  // Arbitrary nonnegative pattern (self-loops allowed). Duplicate (row, col)
  // entries are rejected. In kRowStochastic mode rows are normalized.
  static ContactMatrix from_triplets(std::size_t n,
                                     std::span<const Triplet> entries,
                                     MatrixMode mode);

  std::size_t size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }
  MatrixMode mode() const { return mode_; }

  std::span<const std::uint32_t> row_cols(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  // y = M x. x and y must not alias.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  ContactMatrix transpose() const;
  std::vector<double> row_sums() const;
  double max_row_sum() const;
  bool is_symmetric(double tol = 0.0) const;
  // Strong connectivity of the directed pattern.
  bool is_irreducible() const;

  // Entries sorted by (row, col).
  std::vector<Triplet> triplets() const;

 private:
  std::size_t n_ = 0;
  MatrixMode mode_ = MatrixMode::kRaw;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
};

// Debug export: one "i j m_ij" line per nonzero, sorted by (i, j).
void write_matrix(const ContactMatrix& m, std::ostream& out);

}  // namespace curvsir

#endif  // CURVSIR_CONTACT_MATRIX_HPP_
