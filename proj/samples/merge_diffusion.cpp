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

// Rewrites the canonical 5-qubit circuit with merged H/X pairs, checks the
// unitary, then lowers both versions to one- and two-qubit gates.

#include <iostream>

#include "exact_search/exact_search.hpp"

using namespace exact_search;

int main() {
  const SearchSpec spec =
      SearchSpec::from_bitstrings(5, {"00101", "10111"}, Variant::ModifiedCanonical);
  const BuiltCircuit canonical = build_circuit(spec);
  const AnnotatedCircuit merged = merge_hx_to_ry(canonical.annotated);
  const PassReport merge = make_pass_report("merge_hx_to_ry", canonical.annotated, merged);

  std::cout << "merge: " << merge.gates_before.total << " -> " << merge.gates_after.total
            << " gates, blocked depth " << *merge.blocked_before << " -> "
            << *merge.blocked_after << ", overlap " << format_double(merge.equivalence.overlap)
            << "\n";

  for (const AnnotatedCircuit* c : {&canonical.annotated, &merged}) {
    const LoweringResult low = lower_full(*c, CpsStrategy::Recursive);
    const BasisCensus b = basis_census(low.circuit());
    std::cout << "lowered: H=" << b.h << " X=" << b.x << " T=" << b.t << " Ry=" << b.ry
              << " CPS=" << b.cps << " CT=" << b.ct << " CNOT=" << b.cnot
              << " total=" << b.total << "\n";
  }
}
