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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "exact_search/circuit.hpp"

namespace exact_search {

inline constexpr std::size_t kMaxStateQubits = 24;
inline constexpr double kNormTolerance = 1e-9;

using BasisIndex = std::uint64_t;

/// Applies `gate` in place to a 2^n amplitude array. The target 2x2 acts on
/// amplitude pairs whose control bits are all set.
inline void apply_gate(std::span<Complex> amps, const Gate& gate) {
  const BasisIndex tbit = BasisIndex{1} << gate.target();
  const BasisIndex cmask = gate.control_mask();
  const Matrix2 m = gate.target_matrix();
  const BasisIndex dim = amps.size();

  if (gate.is_diagonal()) {
    const Complex phase = m[3];
    const BasisIndex need = cmask | tbit;
    for (BasisIndex i = 0; i < dim; ++i) {
      if ((i & need) == need) amps[i] *= phase;
    }
    return;
  }
  for (BasisIndex i = 0; i < dim; ++i) {
    if ((i & tbit) || (i & cmask) != cmask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | tbit];
    amps[i] = m[0] * a0 + m[1] * a1;
    amps[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

/// Dense pure state of n qubits.
class StateVector {
 public:
  /// |0...0>.
  static StateVector zero(std::size_t n) {
    if (n < 1 || n > kMaxStateQubits) {
      throw InvalidArgument("state width must be in [1, " +
                            std::to_string(kMaxStateQubits) + "], got " +
                            std::to_string(n));
    }
    StateVector s;
    s.n_ = n;
    s.amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](BasisIndex i) const { return amps_[i]; }

  void apply(const Gate& gate) {
    gate.validate(n_);
    apply_gate(amps_, gate);
  }

  double norm_squared() const {
    double s = 0.0;
    for (const Complex& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(),
                   [](const Complex& a) { return std::norm(a); });
    return p;
  }

 private:
  StateVector() = default;
  std::size_t n_ = 0;
  std::vector<Complex> amps_;
};

inline StateVector init_zero(std::size_t n) { return StateVector::zero(n); }

inline StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

/// Optional per-gate observer; receives the state after each gate.
inline StateVector run(const Circuit& circuit,
                       const std::function<void(std::size_t, const StateVector&)>& after_gate = {}) {
  StateVector s = StateVector::zero(circuit.num_qubits());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    s.apply(circuit[i]);
    if (after_gate) after_gate(i, s);
  }
  return s;
}

/// Runs the circuit and throws NumericalError if the norm drifts by more
/// than `tol` after any gate.
inline StateVector run_checked(const Circuit& circuit, double tol = kNormTolerance) {
  return run(circuit, [&](std::size_t i, const StateVector& s) {
    const double drift = std::abs(s.norm_squared() - 1.0);
    if (drift > tol) {
      throw NumericalError("norm drift " + std::to_string(drift) + " after gate " +
                           std::to_string(i));
    }
  });
}

inline double success_probability(const StateVector& state,
                                  std::span<const BasisIndex> targets) {
  double p = 0.0;
  for (BasisIndex t : targets) {
    if (t >= state.dim()) {
      throw InvalidArgument("target index " + std::to_string(t) + " out of range");
    }
    p += std::norm(state[t]);
  }
  return p;
}

/// `counts` is keyed by basis index; only observed outcomes are present.
struct ShotHistogram {
  std::size_t num_qubits = 0;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::map<BasisIndex, std::size_t> counts;

  std::size_t count(BasisIndex i) const {
    auto it = counts.find(i);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Uniform double in [0, 1) from the top 53 bits of one engine output, so the
/// draw sequence is identical on every standard library.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// i.i.d. measurement shots in the computational basis. Draws come from
/// std::mt19937_64 seeded with `seed`, inverted through the cumulative
/// distribution.
inline ShotHistogram sample(const StateVector& state, std::size_t shots,
                            std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  std::vector<double> cdf = state.probabilities();
  for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
  const double total = cdf.back();

  ShotHistogram h;
  h.num_qubits = state.num_qubits();
  h.shots = shots;
  h.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = unit_uniform(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip zero-probability tail entries that share the final cdf value.
    auto idx = static_cast<BasisIndex>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    while (idx > 0 && std::norm(state[idx]) == 0.0) --idx;
    ++h.counts[idx];
  }
  return h;
}

}  // namespace exact_search
