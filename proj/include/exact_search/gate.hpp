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
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exact_search {

using Qubit = unsigned;
using Complex = std::complex<double>;

/// Raised for malformed input: bad qubit indices, bad specs, parse errors.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical contract (unitarity, equivalence, norm) fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind {
  H,
  X,
  T,
  Tdg,
  Ry,
  PS,
  CNOT,
  CPS,
  CX_multi,
  CPS_multi,
};

inline constexpr std::array<GateKind, 10> kAllGateKinds = {
    GateKind::H,    GateKind::X,   GateKind::T,        GateKind::Tdg,
    GateKind::Ry,   GateKind::PS,  GateKind::CNOT,     GateKind::CPS,
    GateKind::CX_multi, GateKind::CPS_multi};

constexpr std::string_view kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "Tdg";
    case GateKind::Ry: return "Ry";
    case GateKind::PS: return "PS";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CPS: return "CPS";
    case GateKind::CX_multi: return "CX_multi";
    case GateKind::CPS_multi: return "CPS_multi";
  }
  return "?";
}

inline GateKind parse_kind(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (kind_name(k) == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

constexpr bool is_parameterized(GateKind kind) {
  return kind == GateKind::Ry || kind == GateKind::PS ||
         kind == GateKind::CPS || kind == GateKind::CPS_multi;
}

constexpr bool is_multi_controlled(GateKind kind) {
  return kind == GateKind::CX_multi || kind == GateKind::CPS_multi;
}

/// Number of controls a kind admits: exactly {min}..{max}.
constexpr std::size_t min_controls(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CPS:
    case GateKind::CX_multi:
    case GateKind::CPS_multi: return 1;
    default: return 0;
  }
}

constexpr bool fixed_arity(GateKind kind) { return !is_multi_controlled(kind); }

/// Row-major 2x2 matrix of the gate's action on its target qubit, applied
/// only on the subspace where every control is |1>.
using Matrix2 = std::array<Complex, 4>;

/// One circuit element. Controls are kept in the order given; qubit index 0
/// is the least-significant bit of a basis-state integer.
class Gate {
 public:
  Gate(GateKind kind, std::vector<Qubit> controls, Qubit target,
       std::optional<double> angle = std::nullopt)
      : kind_(kind), controls_(std::move(controls)), target_(target),
        angle_(angle) {
    if (is_parameterized(kind_) != angle_.has_value()) {
      throw InvalidArgument(std::string(kind_name(kind_)) +
                            (angle_ ? " takes no angle" : " requires an angle"));
    }
    if (angle_ && !std::isfinite(*angle_)) {
      throw InvalidArgument("gate angle must be finite");
    }
    const std::size_t lo = min_controls(kind_);
    if (controls_.size() < lo || (fixed_arity(kind_) && controls_.size() != lo)) {
      throw InvalidArgument(std::string(kind_name(kind_)) + " expects " +
                            (fixed_arity(kind_) ? "exactly " : "at least ") +
                            std::to_string(lo) + " control(s), got " +
                            std::to_string(controls_.size()));
    }
  }

  GateKind kind() const { return kind_; }
  const std::vector<Qubit>& controls() const { return controls_; }
  Qubit target() const { return target_; }
  std::optional<double> angle() const { return angle_; }

  /// Controls followed by the target.
  std::vector<Qubit> qubits() const {
    std::vector<Qubit> q = controls_;
    q.push_back(target_);
    return q;
  }

  /// Bit mask over all touched qubits (requires indices < 64).
  std::uint64_t footprint() const {
    std::uint64_t m = std::uint64_t{1} << target_;
    for (Qubit c : controls_) m |= std::uint64_t{1} << c;
    return m;
  }

  std::uint64_t control_mask() const {
    std::uint64_t m = 0;
    for (Qubit c : controls_) m |= std::uint64_t{1} << c;
    return m;
  }

  /// Throws InvalidArgument unless every index is < num_qubits and distinct.
  void validate(std::size_t num_qubits) const {
    auto q = qubits();
    for (Qubit i : q) {
      if (i >= num_qubits) {
        throw InvalidArgument("qubit index " + std::to_string(i) +
                              " out of range for width " +
                              std::to_string(num_qubits));
      }
    }
    std::sort(q.begin(), q.end());
    if (std::adjacent_find(q.begin(), q.end()) != q.end()) {
      throw InvalidArgument("duplicate qubit in " +
                            std::string(kind_name(kind_)) + " gate");
    }
  }

  Matrix2 target_matrix() const {
    const double inv_sqrt2 = std::numbers::sqrt2 / 2;
    const Complex i{0.0, 1.0};
    switch (kind_) {
      case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::CX_multi: return {0.0, 1.0, 1.0, 0.0};
      case GateKind::T: return {1.0, 0.0, 0.0, std::exp(i * (std::numbers::pi / 4))};
      case GateKind::Tdg: return {1.0, 0.0, 0.0, std::exp(-i * (std::numbers::pi / 4))};
      case GateKind::Ry: {
        const double c = std::cos(*angle_ / 2), s = std::sin(*angle_ / 2);
        return {c, -s, s, c};
      }
      case GateKind::PS:
      case GateKind::CPS:
      case GateKind::CPS_multi: return {1.0, 0.0, 0.0, std::exp(i * *angle_)};
    }
    return {1.0, 0.0, 0.0, 1.0};
  }

  /// True when the target action is diagonal (phase-type kinds).
  bool is_diagonal() const {
    switch (kind_) {
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::PS:
      case GateKind::CPS:
      case GateKind::CPS_multi: return true;
      default: return false;
    }
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  GateKind kind_;
  std::vector<Qubit> controls_;
  Qubit target_;
  std::optional<double> angle_;
};

/// Adjoint of a gate; same kind family, negated angle where applicable.
inline Gate inverse(const Gate& g) {
  switch (g.kind()) {
    case GateKind::T: return Gate(GateKind::Tdg, {}, g.target());
    case GateKind::Tdg: return Gate(GateKind::T, {}, g.target());
    case GateKind::Ry:
    case GateKind::PS:
    case GateKind::CPS:
    case GateKind::CPS_multi:
      return Gate(g.kind(), g.controls(), g.target(), -*g.angle());
    default: return g;
  }
}

namespace gates {

inline Gate h(Qubit q) { return Gate(GateKind::H, {}, q); }
inline Gate x(Qubit q) { return Gate(GateKind::X, {}, q); }
inline Gate t(Qubit q) { return Gate(GateKind::T, {}, q); }
inline Gate tdg(Qubit q) { return Gate(GateKind::Tdg, {}, q); }
inline Gate ry(double theta, Qubit q) { return Gate(GateKind::Ry, {}, q, theta); }
inline Gate ps(double phi, Qubit q) { return Gate(GateKind::PS, {}, q, phi); }
inline Gate cnot(Qubit c, Qubit q) { return Gate(GateKind::CNOT, {c}, q); }
inline Gate cps(double phi, Qubit c, Qubit q) {
  return Gate(GateKind::CPS, {c}, q, phi);
}
inline Gate cx_multi(std::vector<Qubit> controls, Qubit q) {
  return Gate(GateKind::CX_multi, std::move(controls), q);
}
inline Gate cps_multi(double phi, std::vector<Qubit> controls, Qubit q) {
  return Gate(GateKind::CPS_multi, std::move(controls), q, phi);
}

/// X-type gate with any number of controls, using the narrowest kind.
inline Gate controlled_x(std::vector<Qubit> controls, Qubit q) {
  if (controls.empty()) return x(q);
  if (controls.size() == 1) return cnot(controls.front(), q);
  return cx_multi(std::move(controls), q);
}

/// Phase gate with any number of controls, using the narrowest kind.
inline Gate controlled_ps(double phi, std::vector<Qubit> controls, Qubit q) {
  if (controls.empty()) return ps(phi, q);
  if (controls.size() == 1) return cps(phi, controls.front(), q);
  return cps_multi(phi, std::move(controls), q);
}

}  // namespace gates

}  // namespace exact_search
