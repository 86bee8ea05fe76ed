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

// Rewrite passes over the circuit IR: H/X merging into Ry, and expansion of
// multi-controlled gates into a one- and two-qubit basis.

#pragma once

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exact_search/circuit.hpp"
#include "exact_search/unitary.hpp"

namespace exact_search {

inline constexpr double kEquivalenceTolerance = 1e-9;
inline constexpr std::size_t kMaxVerifyQubits = 8;

// ---------------------------------------------------------------------------
// H/X merging
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_bare(const Gate& g, GateKind k) {
  return g.kind() == k && g.controls().empty();
}

// Merges inside [begin, end) of `in`; returns the surviving gates in order.
inline void merge_range(const Circuit& in, std::size_t begin, std::size_t end,
                        std::vector<std::optional<Gate>>& slots) {
  std::vector<std::optional<std::size_t>> pending(in.num_qubits());
  for (std::size_t i = begin; i < end; ++i) {
    const Gate& g = in[i];
    const bool h = is_bare(g, GateKind::H), x = is_bare(g, GateKind::X);
    if (!h && !x) {
      pending[g.target()].reset();
      for (Qubit c : g.controls()) pending[c].reset();
      continue;
    }
    auto& p = pending[g.target()];
    if (p) {
      const Gate& first = *slots[*p];
      // Time order H then X is X*H = Ry(pi/2); X then H is H*X = Ry(-pi/2).
      if (h && is_bare(first, GateKind::X)) {
        slots[*p] = gates::ry(-std::numbers::pi / 2, g.target());
        slots[i].reset();
        p.reset();
        continue;
      }
      if (x && is_bare(first, GateKind::H)) {
        slots[*p] = gates::ry(std::numbers::pi / 2, g.target());
        slots[i].reset();
        p.reset();
        continue;
      }
    }
    p = i;
  }
}

}  // namespace detail

/// Replaces each adjacent (H, X) pair on a qubit with Ry(pi/2) and each (X, H)
/// pair with Ry(-pi/2). The merged gate takes the slot of the earlier gate.
/// Pairs never straddle a block boundary.
inline AnnotatedCircuit merge_hx_to_ry(const AnnotatedCircuit& in) {
  const Circuit& c = in.circuit;
  validate_blocks(in.blocks, c.size());
  std::vector<std::optional<Gate>> slots(c.gates().begin(), c.gates().end());
  for (const Block& b : in.blocks) detail::merge_range(c, b.begin, b.end, slots);

  AnnotatedCircuit out{Circuit(c.num_qubits()), {}};
  for (const Block& b : in.blocks) {
    const std::size_t begin = out.circuit.size();
    for (std::size_t i = b.begin; i < b.end; ++i) {
      if (slots[i]) out.circuit.append(*slots[i]);
    }
    out.blocks.push_back(Block{b.label, begin, out.circuit.size()});
  }
  return out;
}

/// Unannotated circuits are treated as a single block.
inline Circuit merge_hx_to_ry(const Circuit& c) {
  return merge_hx_to_ry(AnnotatedCircuit{c, {Block{"all", 0, c.size()}}}).circuit;
}

// ---------------------------------------------------------------------------
// Multi-controlled decompositions
// ---------------------------------------------------------------------------

/// How CPS_multi gates with more than three controls are expanded.
///  VChain:    Gray-code chain of 2^c - 1 controlled phases and 2^c - 2 CNOTs.
///  Recursive: CPS(theta/2) on (last control, target), C^{c-1}X onto the last
///             control, CPS(-theta/2), C^{c-1}X again, then C^{c-1}PS(theta/2)
///             on the remaining controls; chains take over at three controls.
enum class CpsStrategy { VChain, Recursive };

constexpr std::string_view strategy_name(CpsStrategy s) {
  return s == CpsStrategy::VChain ? "vchain" : "recursive";
}

inline CpsStrategy parse_strategy(std::string_view s) {
  if (s == "vchain") return CpsStrategy::VChain;
  if (s == "recursive") return CpsStrategy::Recursive;
  throw InvalidArgument("unknown lowering strategy '" + std::string(s) + "'");
}

/// Appends the c-controlled phase theta as a Gray-code chain. Control k holds
/// the parity of the current code word's bits when its phase is applied;
/// every control is restored at the end.
inline void append_vchain(Circuit& out, std::span<const Qubit> controls, Qubit target,
                          double theta) {
  const std::size_t c = controls.size();
  if (c == 0) throw InvalidArgument("v-chain needs at least one control");
  const double step = theta / std::ldexp(1.0, static_cast<int>(c - 1));
  std::vector<std::uint64_t> holds(c);
  for (std::size_t k = 0; k < c; ++k) holds[k] = std::uint64_t{1} << k;

  const std::uint64_t words = std::uint64_t{1} << c;
  for (std::uint64_t i = 1; i < words; ++i) {
    const std::uint64_t code = i ^ (i >> 1);
    const auto lead = static_cast<std::size_t>(std::bit_width(code) - 1);
    const std::uint64_t fix = holds[lead] ^ code;
    if (fix) {
      // Exactly one lower control differs, and it holds its own bit.
      const auto src = static_cast<std::size_t>(std::countr_zero(fix));
      out.append(gates::cnot(controls[src], controls[lead]));
      holds[lead] ^= holds[src];
    }
    const double sign = (std::popcount(code) % 2 == 1) ? 1.0 : -1.0;
    out.append(gates::cps(sign * step, controls[lead], target));
  }
}

/// Standalone chain over n_controls + 1 qubits: controls 0..c-1, target c.
inline Circuit decompose_cnu_vchain(std::size_t n_controls, double theta) {
  if (n_controls < 1) throw InvalidArgument("n_controls must be >= 1");
  Circuit out(n_controls + 1);
  std::vector<Qubit> controls(n_controls);
  for (Qubit q = 0; q < n_controls; ++q) controls[q] = q;
  append_vchain(out, controls, static_cast<Qubit>(n_controls), theta);
  return out;
}

/// One level of the C^cX network for c >= 2 on the given qubits. For c = 2
/// this is the 15-gate Toffoli network (6 CNOT, 2 H, 7 T/Tdg). For c >= 3 the
/// same skeleton runs on the last two controls (a, b) and the target, with
/// every CNOT gaining the remaining c - 2 controls and the T on `a` becoming a
/// phase controlled by them; for c = 3 that is 6 C2X, 1 CT, 2 H and 6 T/Tdg.
inline void append_cnx_network(Circuit& out, std::span<const Qubit> controls,
                               Qubit target) {
  const std::size_t c = controls.size();
  if (c < 2) throw InvalidArgument("C^nX network needs n_controls >= 2");
  const std::vector<Qubit> extra(controls.begin(), controls.end() - 2);
  const Qubit a = controls[c - 2], b = controls[c - 1], t = target;

  auto cx = [&](Qubit from, Qubit to) {
    std::vector<Qubit> ctl = extra;
    ctl.push_back(from);
    out.append(gates::controlled_x(std::move(ctl), to));
  };

  out.append(gates::h(t));
  cx(b, t);
  out.append(gates::tdg(t));
  cx(a, t);
  out.append(gates::t(t));
  cx(b, t);
  out.append(gates::tdg(t));
  cx(a, t);
  out.append(gates::t(b));
  out.append(gates::t(t));
  out.append(gates::h(t));
  cx(a, b);
  if (extra.empty()) {
    out.append(gates::t(a));
  } else {
    out.append(gates::controlled_ps(std::numbers::pi / 4, extra, a));
  }
  out.append(gates::tdg(b));
  cx(a, b);
}

/// One-level network over n_controls + 1 qubits: controls 0..c-1, target c.
inline Circuit cnx_network(std::size_t n_controls) {
  if (n_controls < 2) throw InvalidArgument("n_controls must be >= 2");
  Circuit out(n_controls + 1);
  std::vector<Qubit> controls(n_controls);
  for (Qubit q = 0; q < n_controls; ++q) controls[q] = q;
  append_cnx_network(out, controls, static_cast<Qubit>(n_controls));
  return out;
}

namespace detail {

inline void expand(const Gate& g, Circuit& out, CpsStrategy strategy);

inline void expand_cps(std::span<const Qubit> controls, Qubit target, double theta,
                       Circuit& out, CpsStrategy strategy) {
  if (controls.size() == 1) {
    out.append(gates::cps(theta, controls.front(), target));
    return;
  }
  if (strategy == CpsStrategy::VChain || controls.size() <= 3) {
    append_vchain(out, controls, target, theta);
    return;
  }
  const std::vector<Qubit> rest(controls.begin(), controls.end() - 1);
  const Qubit last = controls.back();
  out.append(gates::cps(theta / 2, last, target));
  expand(gates::controlled_x(rest, last), out, strategy);
  out.append(gates::cps(-theta / 2, last, target));
  expand(gates::controlled_x(rest, last), out, strategy);
  expand_cps(rest, target, theta / 2, out, strategy);
}

inline void expand(const Gate& g, Circuit& out, CpsStrategy strategy) {
  switch (g.kind()) {
    case GateKind::CX_multi: {
      if (g.controls().size() == 1) {
        out.append(gates::cnot(g.controls().front(), g.target()));
        return;
      }
      Circuit level(out.num_qubits());
      append_cnx_network(level, g.controls(), g.target());
      for (const Gate& sub : level.gates()) expand(sub, out, strategy);
      return;
    }
    case GateKind::CPS_multi:
      expand_cps(g.controls(), g.target(), *g.angle(), out, strategy);
      return;
    default:
      out.append(g);
  }
}

}  // namespace detail

/// C^cX fully expanded to {H, T, Tdg, CNOT, CPS} over c + 1 qubits
/// (controls 0..c-1, target c).
inline Circuit decompose_cnx(std::size_t n_controls,
                             CpsStrategy strategy = CpsStrategy::VChain) {
  if (n_controls < 2) throw InvalidArgument("n_controls must be >= 2");
  std::vector<Qubit> controls(n_controls);
  for (Qubit q = 0; q < n_controls; ++q) controls[q] = q;
  Circuit out(n_controls + 1);
  detail::expand(gates::cx_multi(controls, static_cast<Qubit>(n_controls)), out, strategy);
  return out;
}

// ---------------------------------------------------------------------------
// Pass reports
// ---------------------------------------------------------------------------

struct EquivalenceCheck {
  bool performed = false;
  bool passed = true;
  double overlap = 1.0;  // |tr(U^dagger V)| / 2^n
  double tolerance = kEquivalenceTolerance;
};

struct PassReport {
  std::string pass;
  GateHistogram gates_before;
  GateHistogram gates_after;
  std::size_t asap_before = 0;
  std::size_t asap_after = 0;
  std::optional<std::size_t> blocked_before;
  std::optional<std::size_t> blocked_after;
  EquivalenceCheck equivalence;
};

/// Compares the unitaries of `before` and `after` when the width allows it.
inline EquivalenceCheck check_equivalence(const Circuit& before, const Circuit& after,
                                          double tol = kEquivalenceTolerance,
                                          std::size_t max_qubits = kMaxVerifyQubits) {
  EquivalenceCheck e;
  e.tolerance = tol;
  if (before.num_qubits() > max_qubits) return e;
  e.performed = true;
  e.overlap = phase_insensitive_overlap(unitary_of(before), unitary_of(after));
  e.passed = e.overlap >= 1.0 - tol;
  return e;
}

inline PassReport make_pass_report(std::string name, const AnnotatedCircuit& before,
                                   const AnnotatedCircuit& after,
                                   double tol = kEquivalenceTolerance) {
  PassReport r;
  r.pass = std::move(name);
  r.gates_before = count_gates(before.circuit);
  r.gates_after = count_gates(after.circuit);
  r.asap_before = asap_depth(before.circuit);
  r.asap_after = asap_depth(after.circuit);
  if (!before.blocks.empty() || before.circuit.empty()) {
    r.blocked_before = blocked_depth(before);
    r.blocked_after = blocked_depth(after);
  }
  r.equivalence = check_equivalence(before.circuit, after.circuit, tol);
  if (!r.equivalence.passed) {
    throw NumericalError("pass '" + r.pass + "' changed the circuit unitary: overlap " +
                         std::to_string(r.equivalence.overlap));
  }
  return r;
}

struct LoweringResult {
  AnnotatedCircuit annotated;
  PassReport report;

  const Circuit& circuit() const { return annotated.circuit; }
};

/// Expands every multi-controlled gate; block ranges follow their gates.
/// Verified against the input unitary up to global phase for n <= 8; a
/// failed check throws NumericalError.
inline LoweringResult lower_full(const AnnotatedCircuit& in,
                                 CpsStrategy strategy = CpsStrategy::VChain) {
  validate_blocks(in.blocks, in.circuit.size());
  AnnotatedCircuit out{Circuit(in.circuit.num_qubits()), {}};
  for (const Block& b : in.blocks) {
    const std::size_t begin = out.circuit.size();
    for (std::size_t i = b.begin; i < b.end; ++i) {
      detail::expand(in.circuit[i], out.circuit, strategy);
    }
    out.blocks.push_back(Block{b.label, begin, out.circuit.size()});
  }
  PassReport report = make_pass_report(
      "lower_full/" + std::string(strategy_name(strategy)), in, out);
  return {std::move(out), std::move(report)};
}

inline LoweringResult lower_full(const Circuit& in,
                                 CpsStrategy strategy = CpsStrategy::VChain) {
  return lower_full(AnnotatedCircuit{in, {Block{"all", 0, in.size()}}}, strategy);
}

// ---------------------------------------------------------------------------
// Basis census in the column layout of the decomposed-count comparison:
// T includes Tdg, and CT is a CPS whose angle is pi/4.
// ---------------------------------------------------------------------------

struct BasisCensus {
  std::size_t h = 0, x = 0, t = 0, ry = 0, ps = 0, cps = 0, ct = 0, cnot = 0;
  std::size_t other = 0;  // multi-controlled gates left unexpanded
  std::size_t total = 0;

  friend bool operator==(const BasisCensus&, const BasisCensus&) = default;
};

inline bool is_ct(const Gate& g) {
  return g.kind() == GateKind::CPS &&
         std::abs(*g.angle() - std::numbers::pi / 4) < 1e-12;
}

inline BasisCensus basis_census(const Circuit& c) {
  BasisCensus s;
  for (const Gate& g : c.gates()) {
    switch (g.kind()) {
      case GateKind::H: ++s.h; break;
      case GateKind::X: ++s.x; break;
      case GateKind::T:
      case GateKind::Tdg: ++s.t; break;
      case GateKind::Ry: ++s.ry; break;
      case GateKind::PS: ++s.ps; break;
      case GateKind::CPS: is_ct(g) ? ++s.ct : ++s.cps; break;
      case GateKind::CNOT: ++s.cnot; break;
      default: ++s.other; break;
    }
  }
  s.total = c.size();
  return s;
}

}  // namespace exact_search
