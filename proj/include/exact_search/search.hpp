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
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "exact_search/circuit.hpp"
#include "exact_search/statevec.hpp"

namespace exact_search {

enum class Variant { GroverOriginal, ModifiedCanonical, OptimizedMerged };

inline constexpr std::array<Variant, 3> kAllVariants = {
    Variant::GroverOriginal, Variant::ModifiedCanonical, Variant::OptimizedMerged};

constexpr std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::GroverOriginal: return "grover";
    case Variant::ModifiedCanonical: return "modified";
    case Variant::OptimizedMerged: return "optimized";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == s) return v;
  }
  throw InvalidArgument("unknown variant '" + std::string(s) +
                        "' (expected grover, modified or optimized)");
}

constexpr bool is_exact(Variant v) { return v != Variant::GroverOriginal; }

// ---------------------------------------------------------------------------
// Bitstrings. Kets are written most-significant qubit first, so "01" is
// basis index 1 and qubit 0 is the rightmost character.
// ---------------------------------------------------------------------------

inline BasisIndex parse_bitstring(std::string_view bits, std::size_t n) {
  if (bits.size() != n) {
    throw InvalidArgument("bitstring '" + std::string(bits) + "' has length " +
                          std::to_string(bits.size()) + ", expected " +
                          std::to_string(n));
  }
  BasisIndex v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("bitstring '" + std::string(bits) + "' contains '" +
                            std::string(1, c) + "'");
    }
    v = (v << 1) | static_cast<BasisIndex>(c - '0');
  }
  return v;
}

inline std::string format_bitstring(BasisIndex v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q) {
    if ((v >> q) & 1U) s[n - 1 - q] = '1';
  }
  return s;
}

inline std::size_t zero_bits(BasisIndex v, std::size_t n) {
  return n - static_cast<std::size_t>(std::popcount(v & ((BasisIndex{1} << n) - 1)));
}

/// Database of 2^n items with M marked items, searched by one variant.
/// Targets keep their given order; oracles are emitted in that order.
struct SearchSpec {
  std::size_t n = 0;
  std::vector<BasisIndex> targets;
  Variant variant = Variant::OptimizedMerged;

  std::size_t m() const { return targets.size(); }
  double database_size() const { return std::ldexp(1.0, static_cast<int>(n)); }

  void validate() const {
    if (n < 1 || n > kMaxStateQubits) {
      throw InvalidArgument("n must be in [1, " + std::to_string(kMaxStateQubits) +
                            "], got " + std::to_string(n));
    }
    if (targets.empty()) throw InvalidArgument("target set is empty");
    std::set<BasisIndex> seen;
    for (BasisIndex t : targets) {
      if (t >> n) {
        throw InvalidArgument("target " + std::to_string(t) + " exceeds " +
                              std::to_string(n) + " bits");
      }
      if (!seen.insert(t).second) {
        throw InvalidArgument("duplicate target " + format_bitstring(t, n));
      }
    }
  }

  static SearchSpec from_bitstrings(std::size_t n, const std::vector<std::string>& bits,
                                    Variant variant) {
    SearchSpec s{n, {}, variant};
    for (const auto& b : bits) s.targets.push_back(parse_bitstring(b, n));
    s.validate();
    return s;
  }
};

/// Phase-matching bundle. For the Grover baseline `phi` is pi and
/// `iterations` is the Grover iteration count; `j` is informational there.
struct PhaseParams {
  double beta = 0.0;
  unsigned j = 0;
  unsigned j_min = 0;      // smallest valid j
  unsigned j_default = 0;  // floor(pi/4 sqrt(N/M) - 1/2)
  double phi = 0.0;
  unsigned iterations = 0;
};

namespace detail {

inline void check_counts(std::size_t n, std::size_t m) {
  if (n < 1 || n > 62) throw InvalidArgument("n must be in [1, 62]");
  if (m == 0) throw InvalidArgument("target count must be >= 1");
  if (static_cast<double>(m) > std::ldexp(1.0, static_cast<int>(n))) {
    throw InvalidArgument("target count " + std::to_string(m) + " exceeds 2^" +
                          std::to_string(n));
  }
}

inline double beta_of(std::size_t n, std::size_t m) {
  const double ratio = static_cast<double>(m) / std::ldexp(1.0, static_cast<int>(n));
  return std::asin(std::sqrt(std::min(ratio, 1.0)));
}

inline double phase_matching_angle(unsigned j, double beta) {
  const double s = std::sin(std::numbers::pi / (4.0 * j + 6.0)) / std::sin(beta);
  return 2.0 * std::asin(std::min(s, 1.0));
}

}  // namespace detail

/// floor((pi/2 - beta) / (2 beta)).
inline unsigned j_min(std::size_t n, std::size_t m) {
  detail::check_counts(n, m);
  const double beta = detail::beta_of(n, m);
  return static_cast<unsigned>(
      std::floor((std::numbers::pi / 2 - beta) / (2 * beta)));
}

/// Phase angle, slack J and iteration count for an exact search over 2^n
/// items with m targets. Without an override J = floor(pi/4 sqrt(N/M) - 1/2),
/// raised to J_min if that were ever smaller.
inline PhaseParams compute_params(std::size_t n, std::size_t m,
                                  std::optional<unsigned> j_override = std::nullopt) {
  detail::check_counts(n, m);
  PhaseParams p;
  p.beta = detail::beta_of(n, m);
  p.j_min = j_min(n, m);
  const double ratio = std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(m);
  const double raw = std::floor(std::numbers::pi / 4 * std::sqrt(ratio) - 0.5);
  p.j_default = raw < 0 ? 0U : static_cast<unsigned>(raw);
  if (j_override) {
    if (*j_override < p.j_min) {
      throw InvalidArgument("J=" + std::to_string(*j_override) +
                            " is below J_min=" + std::to_string(p.j_min));
    }
    p.j = *j_override;
  } else {
    p.j = std::max(p.j_default, p.j_min);
  }
  p.phi = detail::phase_matching_angle(p.j, p.beta);
  p.iterations = p.j + 1;
  return p;
}

/// floor(pi/4 sqrt(2^n / m)).
inline unsigned grover_iterations(std::size_t n, std::size_t m) {
  detail::check_counts(n, m);
  const double ratio = std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(m);
  return static_cast<unsigned>(std::floor(std::numbers::pi / 4 * std::sqrt(ratio)));
}

/// sin^2((2k+1) beta).
inline double grover_success(std::size_t n, std::size_t m, unsigned k) {
  detail::check_counts(n, m);
  const double s = std::sin((2.0 * k + 1.0) * detail::beta_of(n, m));
  return s * s;
}

// ---------------------------------------------------------------------------
// Circuit construction
// ---------------------------------------------------------------------------

enum class DiffusionForm { Canonical, Merged };

namespace detail {

// Phase on |1...1>; the highest-index qubit is the target.
inline Gate all_ones_phase(std::size_t n, double phi) {
  const auto top = static_cast<Qubit>(n - 1);
  if (n == 1) return gates::ps(phi, top);
  std::vector<Qubit> controls(n - 1);
  for (Qubit q = 0; q < top; ++q) controls[q] = q;
  return gates::cps_multi(phi, std::move(controls), top);
}

}  // namespace detail

/// X on each qubit whose target bit is 0, the all-ones phase, then the same
/// X layer: I + (e^{i phi} - 1)|target><target|.
inline Circuit build_oracle(std::size_t n, BasisIndex target, double phi) {
  Circuit c(n);
  if (target >> n) throw InvalidArgument("oracle target exceeds width");
  std::vector<Qubit> flips;
  for (Qubit q = 0; q < n; ++q) {
    if (!((target >> q) & 1U)) flips.push_back(q);
  }
  for (Qubit q : flips) c.append(gates::x(q));
  c.append(detail::all_ones_phase(n, phi));
  for (Qubit q : flips) c.append(gates::x(q));
  return c;
}

/// I + (e^{i phi} - 1)|s><s| for the uniform superposition |s>.
/// Canonical: H, X, phase, X, H layers (4n+1 gates).
/// Merged: Ry(pi/2), phase, Ry(-pi/2) layers (2n+1 gates).
inline Circuit build_diffusion(std::size_t n, double phi, DiffusionForm form) {
  Circuit c(n);
  const auto width = static_cast<Qubit>(n);
  if (form == DiffusionForm::Canonical) {
    for (Qubit q = 0; q < width; ++q) c.append(gates::h(q));
    for (Qubit q = 0; q < width; ++q) c.append(gates::x(q));
    c.append(detail::all_ones_phase(n, phi));
    for (Qubit q = 0; q < width; ++q) c.append(gates::x(q));
    for (Qubit q = 0; q < width; ++q) c.append(gates::h(q));
  } else {
    for (Qubit q = 0; q < width; ++q) c.append(gates::ry(std::numbers::pi / 2, q));
    c.append(detail::all_ones_phase(n, phi));
    for (Qubit q = 0; q < width; ++q) c.append(gates::ry(-std::numbers::pi / 2, q));
  }
  return c;
}

struct BuiltCircuit {
  AnnotatedCircuit annotated;
  PhaseParams params;

  const Circuit& circuit() const { return annotated.circuit; }
  const std::vector<Block>& blocks() const { return annotated.blocks; }
};

/// Parameters a variant runs with: phase-matched for the exact variants,
/// phi = pi with the Grover iteration count for the baseline.
inline PhaseParams params_for(const SearchSpec& spec,
                              std::optional<unsigned> j_override = std::nullopt) {
  if (is_exact(spec.variant)) return compute_params(spec.n, spec.m(), j_override);
  PhaseParams p = compute_params(spec.n, spec.m());
  p.phi = std::numbers::pi;
  p.iterations = grover_iterations(spec.n, spec.m());
  return p;
}

/// H on every qubit, then per iteration the M oracles in target order and
/// one diffusion. Blocks: "init", "iter<k>/oracle<i>", "iter<k>/diffusion".
inline BuiltCircuit build_circuit(const SearchSpec& spec,
                                  std::optional<unsigned> j_override = std::nullopt) {
  spec.validate();
  BuiltCircuit out{AnnotatedCircuit{Circuit(spec.n), {}}, params_for(spec, j_override)};
  Circuit& c = out.annotated.circuit;
  auto& blocks = out.annotated.blocks;
  auto add_block = [&](std::string label, const Circuit& fragment) {
    const std::size_t begin = c.size();
    c.append(fragment);
    blocks.push_back(Block{std::move(label), begin, c.size()});
  };

  Circuit init(spec.n);
  for (Qubit q = 0; q < spec.n; ++q) init.append(gates::h(q));
  add_block("init", init);

  const DiffusionForm form = spec.variant == Variant::OptimizedMerged
                                 ? DiffusionForm::Merged
                                 : DiffusionForm::Canonical;
  const double phi = out.params.phi;
  const Circuit diffusion = build_diffusion(spec.n, phi, form);
  std::vector<Circuit> oracles;
  oracles.reserve(spec.m());
  for (BasisIndex t : spec.targets) oracles.push_back(build_oracle(spec.n, t, phi));

  for (unsigned k = 0; k < out.params.iterations; ++k) {
    const std::string prefix = "iter" + std::to_string(k) + "/";
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      add_block(prefix + "oracle" + std::to_string(i), oracles[i]);
    }
    add_block(prefix + "diffusion", diffusion);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-dimensional reduced model on span{|T>, |T_perp>}, where |T> is the
// uniform superposition of targets and |T_perp> that of the non-targets.
// ---------------------------------------------------------------------------

struct ReducedState {
  Complex a_target{0.0, 0.0};
  Complex a_rest{0.0, 0.0};

  double norm_squared() const { return std::norm(a_target) + std::norm(a_rest); }
};

/// The uniform superposition: (sin beta, cos beta).
inline ReducedState reduced_initial(const PhaseParams& p) {
  return {std::sin(p.beta), std::cos(p.beta)};
}

/// One application of L = -D O, including the global -1 that the circuit
/// does not emit.
inline ReducedState reduced_step(const ReducedState& s, const PhaseParams& p) {
  const Complex e = std::polar(1.0, p.phi);
  const double sb = std::sin(p.beta), cb = std::cos(p.beta);
  const Complex l00 = -e * (1.0 + (e - 1.0) * sb * sb);
  const Complex l01 = -(e - 1.0) * sb * cb;
  const Complex l10 = -e * (e - 1.0) * sb * cb;
  const Complex l11 = -e + (e - 1.0) * sb * sb;
  return {l00 * s.a_target + l01 * s.a_rest, l10 * s.a_target + l11 * s.a_rest};
}

/// (pi - phi)/2 + J(pi + phi), reduced to [0, 2 pi).
inline double analytic_final_phase(const PhaseParams& p) {
  const double d = (std::numbers::pi - p.phi) / 2 + p.j * (std::numbers::pi + p.phi);
  const double r = std::fmod(d, 2 * std::numbers::pi);
  return r < 0 ? r + 2 * std::numbers::pi : r;
}

/// Phase the reduced model actually lands on after J+1 steps:
/// (phi - pi)/2 + J(pi + phi), reduced to [0, 2 pi). It differs from
/// analytic_final_phase by pi - phi.
inline double reduced_model_final_phase(const PhaseParams& p) {
  const double d = (p.phi - std::numbers::pi) / 2 + p.j * (std::numbers::pi + p.phi);
  const double r = std::fmod(d, 2 * std::numbers::pi);
  return r < 0 ? r + 2 * std::numbers::pi : r;
}

struct Projection {
  ReducedState reduced;
  double residual = 0.0;  // norm of the part outside span{|T>, |T_perp>}
};

/// Projects a full state onto (|T>, |T_perp>). For M = N the rest component
/// is zero by definition.
inline Projection project_reduced(const StateVector& state,
                                  std::span<const BasisIndex> targets) {
  std::vector<bool> marked(state.dim(), false);
  for (BasisIndex t : targets) marked.at(t) = true;
  const double m = static_cast<double>(targets.size());
  const double rest = static_cast<double>(state.dim()) - m;
  Complex sum_t{0.0, 0.0}, sum_r{0.0, 0.0};
  for (BasisIndex i = 0; i < state.dim(); ++i) (marked[i] ? sum_t : sum_r) += state[i];
  Projection p;
  p.reduced.a_target = sum_t / std::sqrt(m);
  p.reduced.a_rest = rest > 0 ? sum_r / std::sqrt(rest) : Complex{0.0, 0.0};
  // Distance from the group means, summed directly rather than as a
  // difference of norms, which would cancel to ~1e-8.
  const Complex mean_t = sum_t / m;
  const Complex mean_r = rest > 0 ? sum_r / rest : Complex{0.0, 0.0};
  double off = 0.0;
  for (BasisIndex i = 0; i < state.dim(); ++i) off += std::norm(state[i] - (marked[i] ? mean_t : mean_r));
  p.residual = std::sqrt(off);
  return p;
}

}  // namespace exact_search
