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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "exact_search/gate.hpp"

namespace exact_search {

/// Widest circuit the IR accepts; footprints are 64-bit masks.
inline constexpr std::size_t kMaxCircuitWidth = 64;

/// Ordered gate sequence over a fixed number of qubits.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits_ == 0 || num_qubits_ > kMaxCircuitWidth) {
      throw InvalidArgument("circuit width must be in [1, " +
                            std::to_string(kMaxCircuitWidth) + "], got " +
                            std::to_string(num_qubits_));
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  Circuit& append(Gate gate) {
    gate.validate(num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
  }

  /// Appends every gate of `other`, which must not be wider than this.
  Circuit& append(const Circuit& other) {
    if (other.num_qubits() > num_qubits_) {
      throw InvalidArgument("cannot append a wider circuit");
    }
    for (const Gate& g : other.gates()) append(g);
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

/// Functional form of Circuit::append.
inline Circuit append(Circuit circuit, Gate gate) {
  circuit.append(std::move(gate));
  return circuit;
}

/// Gate-wise adjoint in reverse order.
inline Circuit inverse(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    out.append(inverse(*it));
  }
  return out;
}

/// Half-open gate index range [begin, end) with a descriptive label.
struct Block {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// A circuit together with its operator-level block partition.
struct AnnotatedCircuit {
  Circuit circuit;
  std::vector<Block> blocks;
};

/// Throws unless `blocks` tile [0, num_gates) in order without gaps or
/// overlap.
inline void validate_blocks(std::span<const Block> blocks, std::size_t num_gates) {
  std::size_t cursor = 0;
  for (const Block& b : blocks) {
    if (b.begin != cursor || b.end < b.begin) {
      throw InvalidArgument("block '" + b.label + "' [" + std::to_string(b.begin) +
                            ", " + std::to_string(b.end) +
                            ") breaks the partition at gate " +
                            std::to_string(cursor));
    }
    cursor = b.end;
  }
  if (cursor != num_gates) {
    throw InvalidArgument("blocks cover " + std::to_string(cursor) + " of " +
                          std::to_string(num_gates) + " gates");
  }
}

struct GateHistogram {
  std::map<GateKind, std::size_t> by_kind;
  std::size_t total = 0;

  std::size_t operator[](GateKind k) const {
    auto it = by_kind.find(k);
    return it == by_kind.end() ? 0 : it->second;
  }
  friend bool operator==(const GateHistogram&, const GateHistogram&) = default;
};

/// Multi-controlled gates count as one each.
inline GateHistogram count_gates(const Circuit& circuit) {
  GateHistogram h;
  for (const Gate& g : circuit.gates()) ++h.by_kind[g.kind()];
  h.total = circuit.size();
  return h;
}

namespace depth_policy {
struct Asap {};
struct Blocked {
  std::vector<Block> blocks;
};
}  // namespace depth_policy

using DepthPolicy = std::variant<depth_policy::Asap, depth_policy::Blocked>;

namespace detail {

// Layer count of gates [begin, end) scheduled as soon as possible: each gate
// lands one layer after the latest layer already occupying any of its qubits.
inline std::size_t asap_layers(const Circuit& c, std::size_t begin, std::size_t end) {
  std::vector<std::size_t> frontier(c.num_qubits(), 0);
  std::size_t depth = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const Gate& g = c[i];
    std::size_t layer = frontier[g.target()];
    for (Qubit q : g.controls()) layer = std::max(layer, frontier[q]);
    ++layer;
    frontier[g.target()] = layer;
    for (Qubit q : g.controls()) frontier[q] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

}  // namespace detail

/// Per-gate layer index (0-based) under the Asap policy.
inline std::vector<std::size_t> asap_layer_assignment(const Circuit& c) {
  std::vector<std::size_t> frontier(c.num_qubits(), 0);
  std::vector<std::size_t> layer_of;
  layer_of.reserve(c.size());
  for (const Gate& g : c.gates()) {
    std::size_t layer = frontier[g.target()];
    for (Qubit q : g.controls()) layer = std::max(layer, frontier[q]);
    layer_of.push_back(layer);
    frontier[g.target()] = layer + 1;
    for (Qubit q : g.controls()) frontier[q] = layer + 1;
  }
  return layer_of;
}

/// Layer count. Blocked sums the Asap depth of each block, so no layer is
/// shared across a block boundary.
inline std::size_t depth(const Circuit& circuit, const DepthPolicy& policy) {
  if (const auto* blocked = std::get_if<depth_policy::Blocked>(&policy)) {
    validate_blocks(blocked->blocks, circuit.size());
    std::size_t total = 0;
    for (const Block& b : blocked->blocks) {
      total += detail::asap_layers(circuit, b.begin, b.end);
    }
    return total;
  }
  return detail::asap_layers(circuit, 0, circuit.size());
}

inline std::size_t asap_depth(const Circuit& c) { return depth(c, depth_policy::Asap{}); }

inline std::size_t blocked_depth(const AnnotatedCircuit& ac) {
  return depth(ac.circuit, depth_policy::Blocked{ac.blocks});
}

}  // namespace exact_search
