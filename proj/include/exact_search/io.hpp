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

// Serialization: the line-oriented circuit format and its JSON mirror, CSV
// and JSON exports of histograms, probabilities, reports and comparisons.

#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "exact_search/metrics.hpp"
#include "exact_search/presets.hpp"

namespace exact_search {

inline constexpr std::string_view kToolName = "exact-search";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Circuit text format
//
//   # comment
//   qubits 5
//   H -> 0
//   CPS_multi 2.1950576990901150 0 1 2 3 -> 4
//   block iter0/oracle0 5 12
//
// One gate per line: KIND [angle] controls... -> target. `qubits` must come
// before the first gate. Optional `block <label> <begin> <end>` lines give a
// half-open gate-index partition.
// ---------------------------------------------------------------------------

inline std::string format_gate(const Gate& g) {
  std::string s(kind_name(g.kind()));
  if (g.angle()) s += " " + format_double(*g.angle());
  for (Qubit c : g.controls()) s += " " + std::to_string(c);
  s += " -> " + std::to_string(g.target());
  return s;
}

inline void write_circuit_text(std::ostream& os, const AnnotatedCircuit& ac) {
  os << "qubits " << ac.circuit.num_qubits() << "\n";
  for (const Gate& g : ac.circuit.gates()) os << format_gate(g) << "\n";
  for (const Block& b : ac.blocks) {
    os << "block " << b.label << " " << b.begin << " " << b.end << "\n";
  }
}

inline std::string circuit_to_text(const AnnotatedCircuit& ac) {
  std::ostringstream os;
  write_circuit_text(os, ac);
  return os.str();
}

inline Gate parse_gate(std::string_view line) {
  const auto arrow = line.find("->");
  if (arrow == std::string_view::npos) {
    throw InvalidArgument("gate line lacks '->': " + std::string(line));
  }
  const auto lhs = detail::split_ws(line.substr(0, arrow));
  const auto rhs = detail::split_ws(line.substr(arrow + 2));
  if (lhs.empty() || rhs.size() != 1) {
    throw InvalidArgument("malformed gate line: " + std::string(line));
  }
  const GateKind kind = parse_kind(lhs[0]);
  std::size_t i = 1;
  std::optional<double> angle;
  if (is_parameterized(kind)) {
    if (lhs.size() < 2) throw InvalidArgument("missing angle: " + std::string(line));
    angle = detail::parse_number<double>(lhs[1], "angle");
    i = 2;
  }
  std::vector<Qubit> controls;
  for (; i < lhs.size(); ++i) controls.push_back(detail::parse_number<Qubit>(lhs[i], "qubit"));
  return Gate(kind, std::move(controls), detail::parse_number<Qubit>(rhs[0], "qubit"), angle);
}

/// A file without block lines comes back as one block spanning every gate.
inline AnnotatedCircuit read_circuit_text(std::istream& is) {
  std::optional<Circuit> circuit;
  std::vector<Block> blocks;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      const auto words = detail::split_ws(line);
      if (words[0] == "qubits") {
        if (circuit || words.size() != 2) throw InvalidArgument("bad qubits declaration");
        circuit.emplace(detail::parse_number<std::size_t>(words[1], "width"));
      } else if (words[0] == "block") {
        if (words.size() != 4) throw InvalidArgument("block needs label, begin, end");
        blocks.push_back(Block{words[1], detail::parse_number<std::size_t>(words[2], "index"),
                               detail::parse_number<std::size_t>(words[3], "index")});
      } else {
        if (!circuit) throw InvalidArgument("gate before 'qubits' declaration");
        circuit->append(parse_gate(line));
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!circuit) throw InvalidArgument("missing 'qubits' declaration");
  if (blocks.empty()) blocks.push_back(Block{"all", 0, circuit->size()});
  validate_blocks(blocks, circuit->size());
  return {std::move(*circuit), std::move(blocks)};
}

inline AnnotatedCircuit circuit_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_circuit_text(is);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using Json = nlohmann::ordered_json;

inline Json to_json(const Gate& g) {
  Json j;
  j["kind"] = kind_name(g.kind());
  if (g.angle()) j["angle"] = *g.angle();
  j["controls"] = g.controls();
  j["target"] = g.target();
  return j;
}

inline Json to_json(const AnnotatedCircuit& ac) {
  Json j;
  j["num_qubits"] = ac.circuit.num_qubits();
  j["gates"] = Json::array();
  for (const Gate& g : ac.circuit.gates()) j["gates"].push_back(to_json(g));
  j["blocks"] = Json::array();
  for (const Block& b : ac.blocks) {
    j["blocks"].push_back({{"label", b.label}, {"begin", b.begin}, {"end", b.end}});
  }
  return j;
}

inline AnnotatedCircuit circuit_from_json(const Json& j) {
  try {
    AnnotatedCircuit ac{Circuit(j.at("num_qubits").get<std::size_t>()), {}};
    for (const auto& g : j.at("gates")) {
      std::optional<double> angle;
      if (g.contains("angle")) angle = g.at("angle").get<double>();
      ac.circuit.append(Gate(parse_kind(g.at("kind").get<std::string>()),
                             g.value("controls", std::vector<Qubit>{}),
                             g.at("target").get<Qubit>(), angle));
    }
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) {
        ac.blocks.push_back(Block{b.at("label").get<std::string>(),
                                  b.at("begin").get<std::size_t>(),
                                  b.at("end").get<std::size_t>()});
      }
    }
    if (ac.blocks.empty()) ac.blocks.push_back(Block{"all", 0, ac.circuit.size()});
    validate_blocks(ac.blocks, ac.circuit.size());
    return ac;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("circuit JSON: ") + e.what());
  }
}

inline Json to_json(const GateHistogram& h) {
  Json j = Json::object();
  for (const auto& [k, v] : h.by_kind) j[std::string(kind_name(k))] = v;
  j["total"] = h.total;
  return j;
}

inline Json to_json(const BasisCensus& c) {
  return Json{{"H", c.h},   {"X", c.x},   {"T", c.t},       {"Ry", c.ry},
              {"PS", c.ps}, {"CPS", c.cps}, {"CT", c.ct},   {"CNOT", c.cnot},
              {"unexpanded", c.other},    {"total", c.total}};
}

inline Json to_json(const PassReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["gates_before"] = to_json(r.gates_before);
  j["gates_after"] = to_json(r.gates_after);
  j["depth_before"] = {{"asap", r.asap_before}};
  j["depth_after"] = {{"asap", r.asap_after}};
  if (r.blocked_before) {
    j["depth_before"]["blocked"] = *r.blocked_before;
    j["depth_after"]["blocked"] = *r.blocked_after;
  }
  j["equivalence"] = {{"performed", r.equivalence.performed},
                      {"passed", r.equivalence.passed},
                      {"overlap", r.equivalence.overlap},
                      {"tolerance", r.equivalence.tolerance}};
  return j;
}

inline Json to_json(const PhaseParams& p) {
  return Json{{"beta", p.beta},           {"j", p.j},
              {"j_min", p.j_min},         {"j_default", p.j_default},
              {"phi", p.phi},             {"iterations", p.iterations}};
}

inline Json to_json(const SearchSpec& s) {
  Json t = Json::array();
  for (BasisIndex v : s.targets) t.push_back(format_bitstring(v, s.n));
  return Json{{"n", s.n}, {"m", s.m()}, {"targets", t}, {"variant", variant_name(s.variant)}};
}

inline Json to_json(const ShotHistogram& h) {
  Json counts = Json::object();
  for (const auto& [idx, c] : h.counts) counts[format_bitstring(idx, h.num_qubits)] = c;
  return Json{{"shots", h.shots}, {"seed", h.seed}, {"counts", counts}};
}

inline Json to_json(const Report& r) {
  Json j;
  j["spec"] = to_json(r.spec);
  j["params"] = to_json(r.params);
  j["params"]["seed"] = r.seed;
  j["params"]["global_phase_note"] =
      "each iteration applies D*O; the -1 of L = -D*O is a global phase and is not emitted";
  j["gates"] = to_json(r.gates);
  j["count_formula"] = r.count_formula_value;
  j["depth"] = {{"blocked", r.depth_blocked},
                {"asap", r.depth_asap},
                {"formula", r.depth_formula_value},
                {"formula_applies", r.depth_formula_applies},
                {"formula_matches_blocked",
                 static_cast<long long>(r.depth_blocked) == r.depth_formula_value}};
  j["success"] = {{"analytic", r.success_analytic}, {"simulated", r.success_simulated}};
  if (r.success_sampled) j["success"]["sampled"] = *r.success_sampled;
  if (r.histogram) j["histogram"] = to_json(*r.histogram);
  if (r.lowered) j["lowered"] = to_json(*r.lowered);
  if (r.lowering) j["lowering_pass"] = to_json(r.lowering->report);
  return j;
}

// ---------------------------------------------------------------------------
// CSV. Every file opens with `#` lines naming the tool version and the
// resolved configuration, then a header row.
// ---------------------------------------------------------------------------

inline void write_provenance(std::ostream& os, const Json& config) {
  os << "# " << kToolName << " " << kToolVersion << "\n";
  os << "# config: " << config.dump() << "\n";
}

inline void write_histogram_csv(std::ostream& os, const ShotHistogram& h, const Json& config) {
  write_provenance(os, config);
  os << "bitstring,count\n";
  for (const auto& [idx, c] : h.counts) os << format_bitstring(idx, h.num_qubits) << "," << c << "\n";
}

inline void write_probabilities_csv(std::ostream& os, const StateVector& s, const Json& config) {
  write_provenance(os, config);
  os << "bitstring,probability\n";
  for (BasisIndex i = 0; i < s.dim(); ++i) {
    os << format_bitstring(i, s.num_qubits()) << "," << format_double(std::norm(s[i])) << "\n";
  }
}

inline std::vector<std::string> compare_csv_header(bool lowered) {
  std::vector<std::string> h = {
      "preset", "n", "m", "targets", "variant", "j", "iterations", "phi", "gates",
      "count_formula", "depth_blocked", "depth_asap", "depth_formula",
      "depth_formula_applies", "success_analytic", "success_simulated", "success_sampled",
      "gate_reduction_vs_modified_pct", "gate_reduction_vs_grover_pct",
      "depth_reduction_vs_modified_pct", "depth_reduction_vs_grover_pct"};
  if (lowered) {
    for (const char* c : {"lowered_H", "lowered_X", "lowered_T", "lowered_Ry", "lowered_PS",
                          "lowered_CPS", "lowered_CT", "lowered_CNOT", "lowered_total",
                          "lowered_reduction_vs_modified_pct", "lowered_reduction_vs_grover_pct",
                          "reference_lowered_total"}) {
      h.emplace_back(c);
    }
  }
  return h;
}

/// `preset` labels the rows; `reference_total` is the published decomposed
/// total when one exists.
inline void write_compare_rows(std::ostream& os, std::string_view preset,
                               const std::vector<ComparisonRow>& rows, bool lowered,
                               const Preset* reference = nullptr) {
  for (const ComparisonRow& row : rows) {
    const Report& r = row.report;
    std::string targets;
    for (BasisIndex t : r.spec.targets) {
      targets += (targets.empty() ? "" : " ") + format_bitstring(t, r.spec.n);
    }
    os << preset << "," << r.spec.n << "," << r.spec.m() << "," << targets << ","
       << variant_name(r.spec.variant) << "," << r.params.j << "," << r.params.iterations
       << "," << format_double(r.params.phi) << "," << r.gates.total << ","
       << r.count_formula_value << "," << r.depth_blocked << "," << r.depth_asap << ","
       << r.depth_formula_value << "," << (r.depth_formula_applies ? 1 : 0) << ","
       << format_double(r.success_analytic) << "," << format_double(r.success_simulated)
       << "," << (r.success_sampled ? format_double(*r.success_sampled) : "") << ","
       << format_tenths(row.gate_reduction_vs_modified) << ","
       << format_tenths(row.gate_reduction_vs_grover) << ","
       << format_tenths(row.depth_reduction_vs_modified) << ","
       << format_tenths(row.depth_reduction_vs_grover);
    if (lowered) {
      const BasisCensus& c = *r.lowered;
      os << "," << c.h << "," << c.x << "," << c.t << "," << c.ry << "," << c.ps << ","
         << c.cps << "," << c.ct << "," << c.cnot << "," << c.total << ","
         << (row.lowered_reduction_vs_modified ? format_tenths(*row.lowered_reduction_vs_modified) : "")
         << ","
         << (row.lowered_reduction_vs_grover ? format_tenths(*row.lowered_reduction_vs_grover) : "")
         << ",";
      if (reference && has_decomposed_reference(*reference)) {
        os << reference->decomposed[variant_index(r.spec.variant)].total;
      }
    }
    os << "\n";
  }
}

// ---------------------------------------------------------------------------
// Run configuration file: `key = value` lines, `#` comments.
//   n = 5
//   targets = 00101,10111
//   variant = optimized
//   j_override = 2        (alias: j)
//   shots = 1000
//   seed = 7
//   preset = 5q2t
//   depth_policy = blocked|asap|both
//   lowered = true|false
//   strategy = vchain|recursive
//   out = results
// ---------------------------------------------------------------------------

struct RunConfig {
  std::optional<std::string> preset;
  std::optional<std::size_t> n;
  std::vector<std::string> targets;
  std::optional<Variant> variant;
  std::optional<unsigned> j_override;
  std::optional<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> depth_policy;
  std::optional<bool> lowered;
  std::optional<CpsStrategy> strategy;
  std::optional<std::string> out;

  /// Fields set in `over` replace those here.
  void overlay(const RunConfig& over) {
    if (over.preset) preset = over.preset;
    if (over.n) n = over.n;
    if (!over.targets.empty()) targets = over.targets;
    if (over.variant) variant = over.variant;
    if (over.j_override) j_override = over.j_override;
    if (over.shots) shots = over.shots;
    if (over.seed) seed = over.seed;
    if (over.depth_policy) depth_policy = over.depth_policy;
    if (over.lowered) lowered = over.lowered;
    if (over.strategy) strategy = over.strategy;
    if (over.out) out = over.out;
  }
};

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InvalidArgument("bad boolean '" + std::string(s) + "'");
}

inline RunConfig parse_config(std::istream& is) {
  RunConfig c;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    try {
      if (key == "preset") c.preset = val;
      else if (key == "n") c.n = detail::parse_number<std::size_t>(val, "n");
      else if (key == "targets") c.targets = split_list(val);
      else if (key == "variant") c.variant = parse_variant(val);
      else if (key == "j_override" || key == "j") c.j_override = detail::parse_number<unsigned>(val, "j");
      else if (key == "shots") c.shots = detail::parse_number<std::size_t>(val, "shots");
      else if (key == "seed") c.seed = detail::parse_number<std::uint64_t>(val, "seed");
      else if (key == "depth_policy") c.depth_policy = val;
      else if (key == "lowered") c.lowered = parse_bool(val);
      else if (key == "strategy") c.strategy = parse_strategy(val);
      else if (key == "out") c.out = val;
      else throw InvalidArgument("unknown key '" + key + "'");
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

inline RunConfig parse_config(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_config(is);
}

}  // namespace exact_search
