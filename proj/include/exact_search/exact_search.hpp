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

#include "exact_search/gate.hpp"
#include "exact_search/circuit.hpp"
#include "exact_search/statevec.hpp"
#include "exact_search/unitary.hpp"
#include "exact_search/search.hpp"
#include "exact_search/lower.hpp"
#include "exact_search/metrics.hpp"
#include "exact_search/presets.hpp"
#include "exact_search/io.hpp"
