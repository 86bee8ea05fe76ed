// Copyright 2026 The exact-search Authors
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

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "exact_search/statevec.hpp"

namespace exact_search {

/// Guard for dense unitary extraction: 2^10 x 2^10 complex entries.
inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// Square complex matrix stored column-major, so each column is a state.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[col * dim_ + row]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[col * dim_ + row];
  }
  std::span<Complex> column(std::size_t col) {
    return std::span<Complex>(data_).subspan(col * dim_, dim_);
  }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Product of the gate matrices in time order (first gate rightmost).
inline DenseMatrix unitary_of(const Circuit& circuit) {
  if (circuit.num_qubits() > kMaxUnitaryQubits) {
    throw InvalidArgument("unitary extraction limited to " +
                          std::to_string(kMaxUnitaryQubits) + " qubits, circuit has " +
                          std::to_string(circuit.num_qubits()));
  }
  DenseMatrix u = DenseMatrix::identity(std::size_t{1} << circuit.num_qubits());
  for (std::size_t col = 0; col < u.dim(); ++col) {
    auto column = u.column(col);
    for (const Gate& g : circuit.gates()) apply_gate(column, g);
  }
  return u;
}

/// tr(A^dagger B).
inline Complex trace_inner(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
  Complex tr{0.0, 0.0};
  for (std::size_t c = 0; c < a.dim(); ++c) {
    for (std::size_t r = 0; r < a.dim(); ++r) tr += std::conj(a(r, c)) * b(r, c);
  }
  return tr;
}

/// Max-entry deviation of U^dagger U from the identity.
inline double unitarity_deviation(const DenseMatrix& u) {
  const std::size_t d = u.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k) s += std::conj(u(k, i)) * u(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

/// |tr(U^dagger V)| / dim, which is 1 exactly when V = e^{ia} U.
inline double phase_insensitive_overlap(const DenseMatrix& u, const DenseMatrix& v) {
  return std::abs(trace_inner(u, v)) / static_cast<double>(u.dim());
}

inline bool equivalent_up_to_phase(const DenseMatrix& u, const DenseMatrix& v,
                                   double tol) {
  return phase_insensitive_overlap(u, v) >= 1.0 - tol;
}

/// Circuit-level convenience; widths must match.
inline bool equivalent_up_to_phase(const Circuit& a, const Circuit& b, double tol) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidArgument("circuit width mismatch");
  }
  return equivalent_up_to_phase(unitary_of(a), unitary_of(b), tol);
}

}  // namespace exact_search
