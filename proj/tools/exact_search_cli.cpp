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

// exact-search: parameters, simulation runs, comparisons, lowering, sweeps.
//
// Exit status: 0 success, 1 usage or invalid input, 2 numerical failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

#include "CLI11.hpp"
#include "exact_search/exact_search.hpp"

namespace fs = std::filesystem;
using namespace exact_search;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

// Raw flag storage; a value is used only when its option was given.
struct FlagValues {
  std::string config, preset, variant, depth_policy, strategy, out;
  std::size_t n = 0, shots = 0;
  std::uint64_t seed = 0;
  unsigned j = 0;
  std::vector<std::string> targets;
  bool lowered = false;
};

struct FlagOptions {
  CLI::Option *config = nullptr, *preset = nullptr, *n = nullptr, *targets = nullptr,
              *variant = nullptr, *j = nullptr, *shots = nullptr, *seed = nullptr,
              *depth_policy = nullptr, *lowered = nullptr, *strategy = nullptr, *out = nullptr;
};

void add_spec_flags(CLI::App* app, FlagValues& v, FlagOptions& o) {
  o.config = app->add_option("--config", v.config, "key = value run configuration file");
  o.preset = app->add_option("--preset", v.preset, "2q2t, 5q2t, 5q4t or 6q3t");
  o.n = app->add_option("-n", v.n, "number of qubits");
  o.targets = app->add_option("-t,--targets", v.targets, "target bitstrings, comma separated")
                  ->delimiter(',');
  o.variant = app->add_option("--variant", v.variant, "grover, modified or optimized");
  o.j = app->add_option("-j,--j", v.j, "phase-matching slack J (>= J_min)");
}

void add_run_flags(CLI::App* app, FlagValues& v, FlagOptions& o) {
  o.shots = app->add_option("--shots", v.shots, "measurement shots (default 1000)");
  o.seed = app->add_option("--seed", v.seed, "sampler seed (default 0)");
  o.depth_policy = app->add_option("--depth-policy", v.depth_policy, "blocked, asap or both");
  o.lowered = app->add_flag("--lowered", v.lowered, "also lower to the 1/2-qubit basis");
  o.strategy = app->add_option("--strategy", v.strategy, "vchain or recursive");
  o.out = app->add_option("--out", v.out, "output directory");
}

RunConfig resolve(const FlagValues& v, const FlagOptions& o) {
  RunConfig cfg;
  if (o.config && o.config->count()) {
    std::ifstream in(v.config);
    if (!in) throw InvalidArgument("cannot read config file '" + v.config + "'");
    cfg = parse_config(in);
  }
  RunConfig flags;
  auto given = [](CLI::Option* opt) { return opt && opt->count() > 0; };
  if (given(o.preset)) flags.preset = v.preset;
  if (given(o.n)) flags.n = v.n;
  if (given(o.targets)) flags.targets = v.targets;
  if (given(o.variant)) flags.variant = parse_variant(v.variant);
  if (given(o.j)) flags.j_override = v.j;
  if (given(o.shots)) flags.shots = v.shots;
  if (given(o.seed)) flags.seed = v.seed;
  if (given(o.depth_policy)) flags.depth_policy = v.depth_policy;
  if (given(o.lowered)) flags.lowered = v.lowered;
  if (given(o.strategy)) flags.strategy = parse_strategy(v.strategy);
  if (given(o.out)) flags.out = v.out;
  cfg.overlay(flags);
  if (cfg.shots && *cfg.shots < 1) throw InvalidArgument("shots must be >= 1");
  if (cfg.depth_policy && *cfg.depth_policy != "blocked" && *cfg.depth_policy != "asap" &&
      *cfg.depth_policy != "both") {
    throw InvalidArgument("depth policy must be blocked, asap or both");
  }
  return cfg;
}

/// Explicit n/targets win over a preset's.
SearchSpec spec_of(const RunConfig& cfg, Variant variant) {
  std::size_t n = 0;
  std::vector<std::string> targets;
  if (cfg.preset) {
    const Preset& p = find_preset(*cfg.preset);
    n = p.n;
    for (auto t : p.targets) targets.emplace_back(t);
  }
  if (cfg.n) n = *cfg.n;
  if (!cfg.targets.empty()) targets = cfg.targets;
  if (n == 0) throw InvalidArgument("need -n (or a preset)");
  if (targets.empty()) throw InvalidArgument("need --targets (or a preset)");
  return SearchSpec::from_bitstrings(n, targets, variant);
}

Variant variant_of(const RunConfig& cfg) {
  return cfg.variant.value_or(Variant::OptimizedMerged);
}

Json config_json(std::string_view command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["preset"] = cfg.preset ? Json(*cfg.preset) : Json();
  j["n"] = cfg.n ? Json(*cfg.n) : Json();
  j["targets"] = cfg.targets;
  j["variant"] = cfg.variant ? Json(variant_name(*cfg.variant)) : Json();
  j["j_override"] = cfg.j_override ? Json(*cfg.j_override) : Json();
  j["shots"] = cfg.shots.value_or(1000);
  j["seed"] = cfg.seed.value_or(0);
  j["depth_policy"] = cfg.depth_policy.value_or("both");
  j["lowered"] = cfg.lowered.value_or(false);
  j["strategy"] = strategy_name(cfg.strategy.value_or(CpsStrategy::VChain));
  return j;
}

Json envelope(const Json& config) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  return j;
}

fs::path out_dir(const RunConfig& cfg, std::string_view fallback) {
  fs::path dir = cfg.out.value_or(std::string(fallback));
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

void write_json(const fs::path& p, const Json& j) { open_out(p) << j.dump(2) << "\n"; }

ReportOptions report_options(const RunConfig& cfg) {
  ReportOptions opt;
  opt.j_override = cfg.j_override;
  opt.shots = cfg.shots.value_or(1000);
  opt.seed = cfg.seed.value_or(0);
  opt.lowered = cfg.lowered.value_or(false);
  opt.strategy = cfg.strategy.value_or(CpsStrategy::VChain);
  return opt;
}

// --- subcommands -----------------------------------------------------------

int cmd_params(const RunConfig& cfg) {
  const SearchSpec spec = spec_of(cfg, variant_of(cfg));
  const PhaseParams p = params_for(spec, cfg.j_override);
  std::cout << "variant     " << variant_name(spec.variant) << "\n"
            << "n           " << spec.n << "\n"
            << "m           " << spec.m() << "\n"
            << "beta        " << format_double(p.beta) << "\n"
            << "J           " << p.j << "\n"
            << "J_min       " << p.j_min << "\n"
            << "J_default   " << p.j_default << "\n"
            << "phi         " << format_double(p.phi) << "\n"
            << "iterations  " << p.iterations << "\n";
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  const SearchSpec spec = spec_of(cfg, variant_of(cfg));
  const Json config = config_json("run", cfg);
  const ReportOptions opt = report_options(cfg);
  const Report report = make_report(spec, opt);
  const StateVector state = run_checked(build_circuit(spec, cfg.j_override).circuit());

  const fs::path dir = out_dir(cfg, "results");
  {
    auto f = open_out(dir / "probabilities.csv");
    write_probabilities_csv(f, state, config);
  }
  {
    auto f = open_out(dir / "histogram.csv");
    write_histogram_csv(f, *report.histogram, config);
  }
  Json hist = envelope(config);
  hist["histogram"] = to_json(*report.histogram);
  write_json(dir / "histogram.json", hist);
  Json rep = envelope(config);
  rep["report"] = to_json(report);
  write_json(dir / "report.json", rep);

  const std::string policy = cfg.depth_policy.value_or("both");
  std::cout << variant_name(spec.variant) << ": gates " << report.gates.total;
  if (policy != "asap") std::cout << ", depth(blocked) " << report.depth_blocked;
  if (policy != "blocked") std::cout << ", depth(asap) " << report.depth_asap;
  std::cout << ", success " << format_double(report.success_simulated) << " (sampled "
            << format_double(*report.success_sampled) << ")";
  if (report.lowered) std::cout << ", lowered " << report.lowered->total;
  std::cout << "\nwrote " << dir.string() << "\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg, const std::vector<std::string>& preset_names) {
  struct Item {
    std::string label;
    const Preset* preset;
    std::vector<SearchSpec> specs;
  };
  std::vector<Item> items;
  auto specs_for = [&](const RunConfig& c) {
    std::vector<SearchSpec> s;
    for (Variant v : kAllVariants) s.push_back(spec_of(c, v));
    return s;
  };
  if (!preset_names.empty() || (!cfg.n && cfg.targets.empty() && !cfg.preset)) {
    std::vector<std::string> names = preset_names;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
      names.clear();
      for (const Preset& p : presets()) names.emplace_back(p.name);
    }
    for (const auto& name : names) {
      const Preset& p = find_preset(name);
      RunConfig c = cfg;
      c.preset = name;
      c.n.reset();
      c.targets.clear();
      items.push_back({name, &p, specs_for(c)});
    }
  } else {
    const Preset* p = cfg.preset && !cfg.n && cfg.targets.empty() ? &find_preset(*cfg.preset)
                                                                   : nullptr;
    items.push_back({p ? std::string(p->name) : "custom", p, specs_for(cfg)});
  }

  const bool lowered = cfg.lowered.value_or(false);
  ReportOptions opt = report_options(cfg);
  Json config = config_json("compare", cfg);
  config["presets"] = Json::array();
  for (const Item& it : items) config["presets"].push_back(it.label);

  const fs::path dir = out_dir(cfg, "results");
  auto csv = open_out(dir / "compare.csv");
  write_provenance(csv, config);
  const auto header = compare_csv_header(lowered);
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << "\n";

  Json out = envelope(config);
  out["rows"] = Json::array();
  for (const Item& it : items) {
    const auto rows = compare(it.specs, opt);
    write_compare_rows(csv, it.label, rows, lowered, it.preset);
    for (const auto& row : rows) {
      Json r;
      r["preset"] = it.label;
      r["report"] = to_json(row.report);
      r["gate_reduction_vs_modified_pct"] = format_tenths(row.gate_reduction_vs_modified);
      r["gate_reduction_vs_grover_pct"] = format_tenths(row.gate_reduction_vs_grover);
      r["depth_reduction_vs_modified_pct"] = format_tenths(row.depth_reduction_vs_modified);
      r["depth_reduction_vs_grover_pct"] = format_tenths(row.depth_reduction_vs_grover);
      if (it.preset && has_decomposed_reference(*it.preset)) {
        r["reference_lowered_total"] =
            it.preset->decomposed[variant_index(row.report.spec.variant)].total;
      }
      out["rows"].push_back(r);
      std::cout << it.label << " " << variant_name(row.report.spec.variant) << ": gates "
                << row.report.gates.total << ", depth " << row.report.depth_blocked
                << ", gate reduction vs modified "
                << format_tenths(row.gate_reduction_vs_modified) << "%\n";
    }
  }
  write_json(dir / "compare.json", out);
  std::cout << "wrote " << (dir / "compare.csv").string() << "\n";
  return 0;
}

int cmd_lower(const std::string& input, const std::string& pass, const RunConfig& cfg) {
  std::ifstream in(input);
  if (!in) throw InvalidArgument("cannot read circuit file '" + input + "'");
  const AnnotatedCircuit before = read_circuit_text(in);
  if (pass != "full" && pass != "merge") throw InvalidArgument("pass must be full or merge");
  LoweringResult lowered = [&] {
    if (pass == "full") return lower_full(before, cfg.strategy.value_or(CpsStrategy::VChain));
    AnnotatedCircuit m = merge_hx_to_ry(before);
    PassReport r = make_pass_report("merge_hx_to_ry", before, m);
    return LoweringResult{std::move(m), std::move(r)};
  }();
  const AnnotatedCircuit& after = lowered.annotated;
  const PassReport& report = lowered.report;
  Json config = config_json("lower", cfg);
  config["input"] = fs::path(input).filename().string();
  config["pass"] = pass;

  const fs::path dir = out_dir(cfg, "lowered");
  {
    auto f = open_out(dir / "lowered.txt");
    f << "# " << kToolName << " " << kToolVersion << "\n# config: " << config.dump() << "\n";
    write_circuit_text(f, after);
  }
  Json rep = envelope(config);
  rep["pass_report"] = to_json(report);
  rep["census"] = to_json(basis_census(after.circuit));
  write_json(dir / "pass_report.json", rep);
  std::cout << report.pass << ": " << report.gates_before.total << " -> "
            << report.gates_after.total << " gates, equivalence "
            << (report.equivalence.performed ? format_double(report.equivalence.overlap)
                                             : std::string("skipped"))
            << "\nwrote " << dir.string() << "\n";
  return 0;
}

struct SweepGrid {
  std::size_t n_min = 1, n_max = 6, m_max = 4;
  unsigned j_extra = 0;
};

int cmd_sweep(const RunConfig& cfg, const SweepGrid& g) {
  if (g.n_min < 1 || g.n_max < g.n_min || g.n_max > 12) {
    throw InvalidArgument("sweep needs 1 <= n-min <= n-max <= 12");
  }
  if (g.m_max < 1) throw InvalidArgument("m-max must be >= 1");
  const std::uint64_t seed = cfg.seed.value_or(0);
  Json config = config_json("sweep", cfg);
  config["grid"] = {{"n_min", g.n_min}, {"n_max", g.n_max}, {"m_max", g.m_max},
                    {"j_extra", g.j_extra}};

  const fs::path dir = out_dir(cfg, "results");
  auto csv = open_out(dir / "sweep.csv");
  write_provenance(csv, config);
  csv << "n,m,targets,variant,j,j_min,iterations,phi,gates,count_formula,depth_blocked,"
         "depth_asap,depth_formula,depth_formula_applies,success_analytic,success_simulated\n";
  std::size_t rows = 0;
  for (std::size_t n = g.n_min; n <= g.n_max; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t m = 1; m <= std::min(g.m_max, dim); ++m) {
      // Targets: a seeded shuffle of the basis, so each (n, m) cell is reproducible.
      std::mt19937_64 rng(seed ^ (n << 32) ^ m);
      std::vector<BasisIndex> all(dim);
      std::iota(all.begin(), all.end(), BasisIndex{0});
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(m);
      std::string targets;
      for (BasisIndex t : all) targets += (targets.empty() ? "" : " ") + format_bitstring(t, n);
      const PhaseParams base = compute_params(n, m);
      for (Variant v : kAllVariants) {
        const unsigned extra = is_exact(v) ? g.j_extra : 0;
        for (unsigned dj = 0; dj <= extra; ++dj) {
          const SearchSpec spec{n, all, v};
          ReportOptions opt;
          opt.sample = false;
          if (is_exact(v)) opt.j_override = base.j + dj;
          const Report r = make_report(spec, opt);
          csv << n << "," << m << "," << targets << "," << variant_name(v) << ","
              << r.params.j << "," << r.params.j_min << "," << r.params.iterations << ","
              << format_double(r.params.phi) << "," << r.gates.total << ","
              << r.count_formula_value << "," << r.depth_blocked << "," << r.depth_asap << ","
              << r.depth_formula_value << "," << (r.depth_formula_applies ? 1 : 0) << ","
              << format_double(r.success_analytic) << ","
              << format_double(r.success_simulated) << "\n";
          ++rows;
        }
      }
    }
  }
  std::cout << "sweep: " << rows << " rows\nwrote " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multi-target quantum search: parameters, simulation, lowering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  FlagValues pv, rv, cv, lv, sv;
  FlagOptions po, ro, co, lo, so;

  auto* params = app.add_subcommand("params", "print phase-matching parameters");
  add_spec_flags(params, pv, po);

  auto* run = app.add_subcommand("run", "simulate one variant and write reports");
  add_spec_flags(run, rv, ro);
  add_run_flags(run, rv, ro);

  std::vector<std::string> compare_presets;
  auto* compare_cmd = app.add_subcommand("compare", "compare the three variants");
  add_spec_flags(compare_cmd, cv, co);
  add_run_flags(compare_cmd, cv, co);
  compare_cmd->add_option("--presets", compare_presets, "preset names, or all")->delimiter(',');

  std::string lower_input, lower_pass = "full";
  auto* lower = app.add_subcommand("lower", "lower a circuit text file");
  lower->add_option("input", lower_input, "circuit text file")->required();
  lower->add_option("--pass", lower_pass, "full (default) or merge");
  lo.config = lower->add_option("--config", lv.config, "key = value run configuration file");
  lo.strategy = lower->add_option("--strategy", lv.strategy, "vchain or recursive");
  lo.out = lower->add_option("--out", lv.out, "output directory");

  SweepGrid grid;
  auto* sweep = app.add_subcommand("sweep", "grid over n, M and J");
  sweep->add_option("--n-min", grid.n_min, "smallest n (default 1)");
  sweep->add_option("--n-max", grid.n_max, "largest n (default 6)");
  sweep->add_option("--m-max", grid.m_max, "largest M per n (default 4)");
  sweep->add_option("--j-extra", grid.j_extra, "extra J values above the default (default 0)");
  so.seed = sweep->add_option("--seed", sv.seed, "target-selection seed");
  so.out = sweep->add_option("--out", sv.out, "output directory");
  so.config = sweep->add_option("--config", sv.config, "key = value run configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*params) return cmd_params(resolve(pv, po));
    if (*run) return cmd_run(resolve(rv, ro));
    if (*compare_cmd) return cmd_compare(resolve(cv, co), compare_presets);
    if (*lower) return cmd_lower(lower_input, lower_pass, resolve(lv, lo));
    if (*sweep) return cmd_sweep(resolve(sv, so), grid);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
