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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact_search/lower.hpp"
#include "exact_search/search.hpp"

namespace exact_search {

/// Published per-kind counts after decomposition, for side-by-side display.
struct ReferenceCensus {
  std::size_t h, x, t, ry, cps, ct, cnot, total;
};

struct Preset {
  std::string_view name;
  std::size_t n;
  std::vector<std::string_view> targets;
  /// Published sampled Grover success, percent.
  double grover_sampled_percent;
  /// Published decomposed counts: grover, modified, optimized.
  std::array<ReferenceCensus, 3> decomposed;

  SearchSpec spec(Variant v) const {
    SearchSpec s{n, {}, v};
    for (auto t : targets) s.targets.push_back(parse_bitstring(t, n));
    s.validate();
    return s;
  }
};

/// The four reference instances. The 5-qubit 4-target set uses its 5-bit
/// kets; target order follows the circuit figures.
inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"2q2t", 2, {"00", "01"}, 49.5, {}},
      {"5q2t",
       5,
       {"00101", "10111"},
       95.8,
       {{{809, 54, 2646, 0, 27, 54, 1962, 5552},
         {287, 54, 864, 0, 81, 18, 702, 2006},
         {257, 24, 864, 30, 81, 18, 702, 1976}}}},
      {"5q4t",
       5,
       {"10001", "01011", "11101", "10110"},
       94.7,
       {{{895, 62, 2940, 0, 30, 60, 2180, 6167},
         {305, 52, 960, 0, 90, 20, 780, 2207},
         {285, 32, 960, 20, 90, 20, 780, 2187}}}},
      {"6q3t",
       6,
       {"100010", "110011", "111010"},
       96.3,
       {{{7822, 112, 26550, 0, 375, 540, 19710, 55109},
         {3411, 568, 10234, 0, 272, 224, 8824, 23533},
         {3363, 520, 10234, 48, 272, 224, 8824, 23485}}}},
  };
  return all;
}

inline bool has_decomposed_reference(const Preset& p) { return p.decomposed[0].total != 0; }

inline const Preset& find_preset(std::string_view name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const Preset& p : presets()) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw InvalidArgument("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

inline std::size_t variant_index(Variant v) {
  switch (v) {
    case Variant::GroverOriginal: return 0;
    case Variant::ModifiedCanonical: return 1;
    case Variant::OptimizedMerged: return 2;
  }
  return 0;
}

}  // namespace exact_search
