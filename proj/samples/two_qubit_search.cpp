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

// Half of a 4-item database is marked. Plain Grover stalls at 50%; the
// phase-matched circuit finds a target with certainty.

#include <iostream>

#include "exact_search/exact_search.hpp"

using namespace exact_search;

int main() {
  for (Variant v : kAllVariants) {
    const SearchSpec spec = SearchSpec::from_bitstrings(2, {"00", "01"}, v);
    const BuiltCircuit b = build_circuit(spec);
    const StateVector s = run_checked(b.circuit());
    const ShotHistogram h = sample(s, 1000, 1);

    std::cout << variant_name(v) << ": phi=" << format_double(b.params.phi)
              << " iterations=" << b.params.iterations << " gates=" << b.circuit().size()
              << " success=" << format_double(success_probability(s, spec.targets)) << "\n";
    for (const auto& [idx, count] : h.counts) {
      std::cout << "  " << format_bitstring(idx, 2) << " " << count << "\n";
    }
  }
}
