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
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "exact_search/lower.hpp"
#include "exact_search/search.hpp"

namespace exact_search {

namespace detail {

inline long long floor_pi4_sqrt(std::size_t n, std::size_t m, double shift) {
  const double ratio = std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(m);
  return static_cast<long long>(std::floor(std::numbers::pi / 4 * std::sqrt(ratio) - shift));
}

}  // namespace detail

/// Closed-form depth assuming 1 layer for the Hadamard layer, 3 per oracle,
/// and 5 (canonical) or 3 (merged) per diffusion:
///   grover:    1 + (3M+5) floor(pi/4 sqrt(2^n/M))
///   modified:  (3M+6) + (3M+5) floor(pi/4 sqrt(2^n/M) - 1/2)
///   optimized: (3M+4) + (3M+3) floor(pi/4 sqrt(2^n/M) - 1/2)
inline long long depth_formula(Variant v, std::size_t n, std::size_t m) {
  detail::check_counts(n, m);
  const auto mm = static_cast<long long>(m);
  switch (v) {
    case Variant::GroverOriginal:
      return 1 + (3 * mm + 5) * detail::floor_pi4_sqrt(n, m, 0.0);
    case Variant::ModifiedCanonical:
      return (3 * mm + 6) + (3 * mm + 5) * detail::floor_pi4_sqrt(n, m, 0.5);
    case Variant::OptimizedMerged:
      return (3 * mm + 4) + (3 * mm + 3) * detail::floor_pi4_sqrt(n, m, 0.5);
  }
  return 0;
}

/// n + iterations * (sum_i (2 z_i + 1) + D), z_i the zero bits of target i,
/// D = 4n+1 for the canonical diffusion and 2n+1 for the merged one.
inline std::size_t count_formula(const SearchSpec& spec, const PhaseParams& params) {
  std::size_t oracle_gates = 0;
  for (BasisIndex t : spec.targets) oracle_gates += 2 * zero_bits(t, spec.n) + 1;
  const std::size_t diffusion =
      spec.variant == Variant::OptimizedMerged ? 2 * spec.n + 1 : 4 * spec.n + 1;
  return spec.n + params.iterations * (oracle_gates + diffusion);
}

/// Percentage reduction of `value` against `reference`, in tenths of a
/// percent, rounded half-up from exact integer arithmetic.
inline long long reduction_tenths(long long reference, long long value) {
  if (reference <= 0) return 0;
  const long long num = 2000 * (reference - value) + reference;
  const long long den = 2 * reference;
  long long q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;  // floor division
  return q;
}

inline std::string format_tenths(long long tenths) {
  const bool neg = tenths < 0;
  const long long a = neg ? -tenths : tenths;
  return (neg ? "-" : "") + std::to_string(a / 10) + "." + std::to_string(a % 10);
}

/// Per-run metrics for one variant of one instance.
struct Report {
  SearchSpec spec;
  PhaseParams params;
  std::optional<unsigned> j_override;
  std::uint64_t seed = 0;
  std::size_t shots = 0;

  GateHistogram gates;
  std::size_t count_formula_value = 0;
  std::size_t depth_blocked = 0;
  std::size_t depth_asap = 0;
  long long depth_formula_value = 0;
  /// False when the formula's assumptions do not hold for this instance:
  /// an all-ones target (1-layer oracle) or a J other than the default.
  bool depth_formula_applies = true;

  double success_analytic = 0.0;   // 1 for exact variants, sin^2 for Grover
  double success_simulated = 0.0;  // amplitude-level
  std::optional<double> success_sampled;
  std::optional<ShotHistogram> histogram;

  std::optional<BasisCensus> lowered;
  std::optional<LoweringResult> lowering;
};

struct ReportOptions {
  std::optional<unsigned> j_override = std::nullopt;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  bool sample = true;
  bool lowered = false;
  CpsStrategy strategy = CpsStrategy::VChain;
};

inline bool formula_depth_applies(const SearchSpec& spec, const PhaseParams& p) {
  for (BasisIndex t : spec.targets) {
    if (zero_bits(t, spec.n) == 0) return false;
  }
  if (is_exact(spec.variant) && p.j != p.j_default) return false;
  return true;
}

/// Builds, simulates and measures one instance.
inline Report make_report(const SearchSpec& spec, const ReportOptions& opt = {}) {
  Report r;
  r.spec = spec;
  r.j_override = opt.j_override;
  r.seed = opt.seed;
  r.shots = opt.shots;

  const BuiltCircuit built = build_circuit(spec, opt.j_override);
  r.params = built.params;
  r.gates = count_gates(built.circuit());
  r.count_formula_value = count_formula(spec, built.params);
  r.depth_blocked = blocked_depth(built.annotated);
  r.depth_asap = asap_depth(built.circuit());
  r.depth_formula_value = depth_formula(spec.variant, spec.n, spec.m());
  r.depth_formula_applies = formula_depth_applies(spec, built.params);

  r.success_analytic = is_exact(spec.variant)
                           ? 1.0
                           : grover_success(spec.n, spec.m(), built.params.iterations);
  const StateVector state = run_checked(built.circuit());
  r.success_simulated = success_probability(state, spec.targets);
  if (opt.sample) {
    ShotHistogram h = sample(state, opt.shots, opt.seed);
    std::size_t hits = 0;
    for (BasisIndex t : spec.targets) hits += h.count(t);
    r.success_sampled = static_cast<double>(hits) / static_cast<double>(h.shots);
    r.histogram = std::move(h);
  }
  if (opt.lowered) {
    r.lowering = lower_full(built.annotated, opt.strategy);
    r.lowered = basis_census(r.lowering->circuit());
  }
  return r;
}

/// One row of the cross-variant comparison.
struct ComparisonRow {
  Report report;
  long long gate_reduction_vs_modified = 0;  // tenths of a percent
  long long gate_reduction_vs_grover = 0;
  long long depth_reduction_vs_modified = 0;
  long long depth_reduction_vs_grover = 0;
  std::optional<long long> lowered_reduction_vs_modified = std::nullopt;
  std::optional<long long> lowered_reduction_vs_grover = std::nullopt;
};

/// Rows in the order given. Reductions are measured against the modified and
/// Grover rows when present, else against the row itself (zero).
inline std::vector<ComparisonRow> compare(const std::vector<SearchSpec>& specs,
                                          const ReportOptions& opt = {}) {
  if (specs.empty()) throw InvalidArgument("compare needs at least one spec");
  for (const SearchSpec& s : specs) {
    if (s.n != specs.front().n || s.targets != specs.front().targets) {
      throw InvalidArgument("compared specs must share n and targets");
    }
  }
  std::vector<ComparisonRow> rows;
  for (const SearchSpec& s : specs) rows.push_back(ComparisonRow{.report = make_report(s, opt)});

  auto find = [&](Variant v) -> const Report* {
    for (const auto& row : rows) {
      if (row.report.spec.variant == v) return &row.report;
    }
    return nullptr;
  };
  const Report* modified = find(Variant::ModifiedCanonical);
  const Report* grover = find(Variant::GroverOriginal);
  for (auto& row : rows) {
    const Report& r = row.report;
    const Report& mod = modified ? *modified : r;
    const Report& gro = grover ? *grover : r;
    auto total = [](const Report& x) { return static_cast<long long>(x.gates.total); };
    auto dep = [](const Report& x) { return static_cast<long long>(x.depth_blocked); };
    row.gate_reduction_vs_modified = reduction_tenths(total(mod), total(r));
    row.gate_reduction_vs_grover = reduction_tenths(total(gro), total(r));
    row.depth_reduction_vs_modified = reduction_tenths(dep(mod), dep(r));
    row.depth_reduction_vs_grover = reduction_tenths(dep(gro), dep(r));
    if (r.lowered && mod.lowered && gro.lowered) {
      auto low = [](const Report& x) { return static_cast<long long>(x.lowered->total); };
      row.lowered_reduction_vs_modified = reduction_tenths(low(mod), low(r));
      row.lowered_reduction_vs_grover = reduction_tenths(low(gro), low(r));
    }
  }
  return rows;
}

}  // namespace exact_search
