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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "exact_search/exact_search.hpp"
#include "random_circuits.hpp"

using namespace exact_search;

namespace {

constexpr double kTol = 1e-9;
constexpr double kPi = std::numbers::pi;

// Closed forms, written independently of the library.
double ref_beta(double n, double m) { return std::asin(std::sqrt(m / std::pow(2.0, n))); }
double ref_phi(unsigned j, double beta) {
  return 2 * std::asin(std::sin(kPi / (4 * j + 6)) / std::sin(beta));
}

TEST(Bitstring, MostSignificantFirst) {
  EXPECT_EQ(parse_bitstring("00101", 5), 5U);
  EXPECT_EQ(parse_bitstring("10000", 5), 16U);
  EXPECT_EQ(format_bitstring(5, 5), "00101");
  EXPECT_THROW(parse_bitstring("0101", 5), InvalidArgument);
  EXPECT_THROW(parse_bitstring("0a101", 5), InvalidArgument);
  EXPECT_EQ(zero_bits(5, 5), 3U);
}

TEST(SearchSpec, Validation) {
  EXPECT_THROW(SearchSpec::from_bitstrings(2, {}, Variant::OptimizedMerged), InvalidArgument);
  EXPECT_THROW(SearchSpec::from_bitstrings(2, {"01", "01"}, Variant::OptimizedMerged),
               InvalidArgument);
  EXPECT_THROW((SearchSpec{2, {4}, Variant::OptimizedMerged}.validate()), InvalidArgument);
  EXPECT_THROW((SearchSpec{0, {0}, Variant::OptimizedMerged}.validate()), InvalidArgument);
  EXPECT_NO_THROW(SearchSpec::from_bitstrings(1, {"0", "1"}, Variant::ModifiedCanonical));
}

TEST(Variant, NamesRoundTrip) {
  for (Variant v : kAllVariants) EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_THROW(parse_variant("fast"), InvalidArgument);
}

struct ParamCase {
  std::size_t n, m;
  unsigned j;
  double phi;
};

TEST(ComputeParams, PublishedInstances) {
  const ParamCase cases[] = {{2, 2, 0, 1.5708}, {5, 2, 2, 2.1951}, {5, 4, 1, 2.1269},
                             {6, 3, 3, 1.8614}};
  for (const auto& c : cases) {
    const PhaseParams p = compute_params(c.n, c.m);
    EXPECT_EQ(p.j, c.j) << c.n << "q" << c.m << "t";
    EXPECT_EQ(p.iterations, c.j + 1);
    EXPECT_NEAR(p.phi, c.phi, 5e-5);
    EXPECT_NEAR(p.beta, ref_beta(c.n, c.m), 1e-12);
    EXPECT_EQ(p.j_min, c.j);
  }
}

TEST(ComputeParams, TwoOfFourHasQuarterBeta) {
  const PhaseParams p = compute_params(2, 2);
  EXPECT_NEAR(p.beta, kPi / 4, 1e-12);
  EXPECT_NEAR(p.phi, kPi / 2, 1e-12);
}

TEST(ComputeParams, Errors) {
  EXPECT_THROW(compute_params(5, 0), InvalidArgument);
  EXPECT_THROW(compute_params(2, 5), InvalidArgument);
  EXPECT_THROW(compute_params(6, 3, 2U), InvalidArgument);
  EXPECT_EQ(compute_params(6, 3, 7U).iterations, 8U);
}

TEST(ComputeParams, AllTargetsBoundary) {
  const PhaseParams p = compute_params(3, 8);
  EXPECT_NEAR(p.beta, kPi / 2, 1e-12);
  EXPECT_EQ(p.j, 0U);
  EXPECT_NEAR(p.phi, ref_phi(0, kPi / 2), 1e-12);
}

TEST(ComputeParams, DefaultNeverBelowMinimum) {
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t m = 1; m <= (std::size_t{1} << n); m = m * 3 + 1) {
      const PhaseParams p = compute_params(n, m);
      EXPECT_GE(p.j_default, p.j_min) << n << " " << m;
      EXPECT_LE(std::sin(kPi / (4 * p.j + 6)) / std::sin(p.beta), 1.0 + 1e-15);
    }
  }
}

TEST(GroverIterations, Examples) {
  EXPECT_EQ(grover_iterations(2, 2), 1U);
  EXPECT_EQ(grover_iterations(5, 2), 3U);
  EXPECT_EQ(grover_iterations(6, 3), 3U);
  EXPECT_EQ(grover_iterations(5, 4), 2U);
}

TEST(GroverSuccess, Examples) {
  EXPECT_NEAR(grover_success(2, 2, 0), 0.5, 1e-12);
  EXPECT_NEAR(grover_success(2, 2, 1), 0.5, 1e-12);
  EXPECT_NEAR(grover_success(5, 2, 3), 0.9613, 5e-5);
  const double s = std::sin(5 * ref_beta(5, 4));
  EXPECT_NEAR(grover_success(5, 4, 2), s * s, 1e-12);
}

TEST(Oracle, FiveQubitTargetShape) {
  const Circuit c = build_oracle(5, parse_bitstring("00101", 5), 2.1951);
  EXPECT_EQ(c.size(), 7U);
  EXPECT_EQ(count_gates(c)[GateKind::X], 6U);
  EXPECT_EQ(count_gates(c)[GateKind::CPS_multi], 1U);
}

TEST(Oracle, AllOnesTargetHasNoFlips) {
  const Circuit c = build_oracle(4, 15, 1.0);
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c[0].kind(), GateKind::CPS_multi);
  EXPECT_EQ(c[0].target(), 3U);
}

TEST(Oracle, SingleQubitUsesPlainPhase) {
  const Circuit c = build_oracle(1, 0, 0.7);
  EXPECT_EQ(count_gates(c)[GateKind::PS], 1U);
  EXPECT_LT((oracle::circuit_matrix(c) - oracle::marked_phase(1, {0}, 0.7)).cwiseAbs().maxCoeff(),
            kTol);
}

TEST(Oracle, DiagonalPhaseOnTargetOnly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (BasisIndex t = 0; t < (BasisIndex{1} << n); ++t) {
      const double phi = ang(rng);
      const oracle::Mat got = oracle::to_eigen(unitary_of(build_oracle(n, t, phi)));
      EXPECT_LT((got - oracle::marked_phase(n, {t}, phi)).cwiseAbs().maxCoeff(), kTol);
    }
  }
}

TEST(Oracle, SerialProductMarksAllTargets) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const SearchSpec s = gen::random_spec(rng, 6, Variant::ModifiedCanonical);
    const double phi = 1.234;
    Circuit c(s.n);
    for (BasisIndex t : s.targets) c.append(build_oracle(s.n, t, phi));
    const oracle::Mat want = oracle::marked_phase(s.n, s.targets, phi);
    EXPECT_LT((oracle::circuit_matrix(c) - want).cwiseAbs().maxCoeff(), kTol);
  }
}

TEST(Diffusion, GateCounts) {
  EXPECT_EQ(build_diffusion(5, 1.0, DiffusionForm::Canonical).size(), 21U);
  EXPECT_EQ(build_diffusion(5, 1.0, DiffusionForm::Merged).size(), 11U);
}

TEST(Diffusion, BothFormsMatchPhaseAboutUniform) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int k = 0; k < 16; ++k) {
      const double phi = 2 * kPi * (k + 0.5) / 16;
      const oracle::Mat want = oracle::phase_about(oracle::uniform(n), phi);
      for (DiffusionForm f : {DiffusionForm::Canonical, DiffusionForm::Merged}) {
        const oracle::Mat got = oracle::circuit_matrix(build_diffusion(n, phi, f));
        EXPECT_NEAR(oracle::overlap(got, want), 1.0, kTol) << n << " " << phi;
      }
      EXPECT_TRUE(equivalent_up_to_phase(build_diffusion(n, phi, DiffusionForm::Canonical),
                                         build_diffusion(n, phi, DiffusionForm::Merged), kTol));
    }
  }
}

TEST(Diffusion, SingleQubitByHand) {
  // I + (e - 1)|+><+| = [[1+e, e-1], [e-1, 1+e]] / 2.
  const double phi = 0.9;
  const Complex e = std::polar(1.0, phi);
  oracle::Mat want(2, 2);
  want << (1.0 + e) / 2.0, (e - 1.0) / 2.0, (e - 1.0) / 2.0, (1.0 + e) / 2.0;
  for (DiffusionForm f : {DiffusionForm::Canonical, DiffusionForm::Merged}) {
    EXPECT_NEAR(oracle::overlap(oracle::circuit_matrix(build_diffusion(1, phi, f)), want), 1.0,
                kTol);
  }
}

TEST(BuildCircuit, PublishedCounts) {
  struct Row {
    const char* preset;
    std::size_t grover, modified, optimized;
  };
  for (const Row& r : {Row{"2q2t", 19, 19, 15}, Row{"5q2t", 98, 98, 68}, Row{"5q4t", 87, 87, 67}}) {
    const auto& p = find_preset(r.preset);
    EXPECT_EQ(build_circuit(p.spec(Variant::GroverOriginal)).circuit().size(), r.grover);
    EXPECT_EQ(build_circuit(p.spec(Variant::ModifiedCanonical)).circuit().size(), r.modified);
    EXPECT_EQ(build_circuit(p.spec(Variant::OptimizedMerged)).circuit().size(), r.optimized);
  }
  const auto& six = find_preset("6q3t");
  EXPECT_EQ(build_circuit(six.spec(Variant::ModifiedCanonical)).circuit().size(), 182U);
  EXPECT_EQ(build_circuit(six.spec(Variant::OptimizedMerged)).circuit().size(), 134U);
  // Three Grover iterations of (oracles + diffusion) after the init layer.
  EXPECT_EQ(build_circuit(six.spec(Variant::GroverOriginal)).circuit().size(), 138U);
}

TEST(BuildCircuit, BlockLayout) {
  const BuiltCircuit b = build_circuit(find_preset("5q2t").spec(Variant::OptimizedMerged));
  ASSERT_EQ(b.blocks().size(), 1U + 3 * 3);
  EXPECT_EQ(b.blocks()[0].label, "init");
  EXPECT_EQ(b.blocks()[1].label, "iter0/oracle0");
  EXPECT_EQ(b.blocks()[3].label, "iter0/diffusion");
  EXPECT_EQ(b.blocks().back().label, "iter2/diffusion");
  EXPECT_NO_THROW(validate_blocks(b.blocks(), b.circuit().size()));
}

TEST(BuildCircuit, VariantCountIdentity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    SearchSpec s = gen::random_spec(rng, 8, Variant::ModifiedCanonical);
    const auto mod = build_circuit(s);
    s.variant = Variant::OptimizedMerged;
    const auto opt = build_circuit(s);
    EXPECT_EQ(mod.circuit().size() - opt.circuit().size(), 2 * s.n * mod.params.iterations);
  }
}

TEST(BuildCircuit, GroverMatchesDenseOperator) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const SearchSpec s = gen::random_spec(rng, 4, Variant::GroverOriginal);
    const BuiltCircuit b = build_circuit(s);
    const std::size_t dim = std::size_t{1} << s.n;
    const oracle::Vec u = oracle::uniform(s.n);
    oracle::Mat o = oracle::Mat::Identity(dim, dim);
    for (BasisIndex t : s.targets) o(t, t) = -1.0;
    const oracle::Mat g = (2.0 * u * u.adjoint() - oracle::Mat::Identity(dim, dim)) * o;
    oracle::Mat want = oracle::Mat::Identity(dim, dim);
    for (unsigned k = 0; k < b.params.iterations; ++k) want = g * want;
    // Strip the init layer and compare the iteration product.
    Circuit body(s.n);
    for (std::size_t i = s.n; i < b.circuit().size(); ++i) body.append(b.circuit()[i]);
    EXPECT_NEAR(oracle::overlap(oracle::circuit_matrix(body), want), 1.0, kTol);
  }
}

TEST(Exactness, PresetsReachCertainty) {
  for (const auto& p : presets()) {
    for (Variant v : {Variant::ModifiedCanonical, Variant::OptimizedMerged}) {
      const SearchSpec s = p.spec(v);
      EXPECT_NEAR(success_probability(run(build_circuit(s).circuit()), s.targets), 1.0, kTol)
          << p.name;
    }
  }
}

TEST(Exactness, HalfAndQuarterMarked) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t div : {2U, 4U}) {
      const std::size_t m = (std::size_t{1} << n) / div;
      SearchSpec s{n, {}, Variant::OptimizedMerged};
      for (BasisIndex t = 0; t < m; ++t) s.targets.push_back(t * div);
      EXPECT_NEAR(success_probability(run(build_circuit(s).circuit()), s.targets), 1.0, kTol);
    }
  }
}

TEST(ExactnessProperty, RandomSpecsAndSlack) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 120; ++trial) {
    const Variant v = trial % 2 ? Variant::OptimizedMerged : Variant::ModifiedCanonical;
    const SearchSpec s = gen::random_spec(rng, 7, v);
    const PhaseParams p = compute_params(s.n, s.m());
    const unsigned j = p.j_min + static_cast<unsigned>(trial % 3);
    const auto b = build_circuit(s, j);
    EXPECT_EQ(b.params.j, j);
    EXPECT_NEAR(b.params.phi, ref_phi(j, ref_beta(s.n, s.m())), 1e-12);
    EXPECT_NEAR(success_probability(run_checked(b.circuit()), s.targets), 1.0, kTol)
        << "n=" << s.n << " m=" << s.m() << " j=" << j;
  }
}

TEST(ReducedModel, NormPreservedAtFullMarking) {
  const PhaseParams p = compute_params(3, 8);
  ReducedState r = reduced_initial(p);
  EXPECT_NEAR(std::abs(r.a_rest), 0.0, 1e-12);
  r = reduced_step(r, p);
  EXPECT_NEAR(r.norm_squared(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.a_rest), 0.0, 1e-12);
}

TEST(ReducedModel, TwoOfFourOneStep) {
  const PhaseParams p = compute_params(2, 2);
  const ReducedState r = reduced_step(reduced_initial(p), p);
  EXPECT_NEAR(std::abs(r.a_target), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.a_rest), 0.0, 1e-12);
  EXPECT_NEAR(std::arg(r.a_target), reduced_model_final_phase(p) - 2 * kPi, 1e-12);
}

TEST(ReducedModel, FinalPhaseFormulas) {
  PhaseParams p;
  p.j = 0;
  p.phi = kPi / 2;
  EXPECT_NEAR(analytic_final_phase(p), kPi / 4, 1e-12);
  p.j = 2;
  p.phi = 2.1951;
  EXPECT_NEAR(analytic_final_phase(p),
              std::fmod((kPi - 2.1951) / 2 + 2 * (kPi + 2.1951), 2 * kPi), 1e-12);
}

// Independent 2x2 reduction: L = -D O with D, O restricted by hand to the
// (|T>, |T_perp>) basis.
TEST(ReducedModel, MatchesHandBuiltMatrix) {
  for (const auto& pr : presets()) {
    const PhaseParams p = compute_params(pr.n, pr.targets.size());
    const Complex e = std::polar(1.0, p.phi);
    Eigen::Matrix2cd o, d;
    o << e, 0, 0, 1;
    Eigen::Vector2cd s0(std::sin(p.beta), std::cos(p.beta));
    d = Eigen::Matrix2cd::Identity() + (e - 1.0) * s0 * s0.adjoint();
    const Eigen::Matrix2cd l = -d * o;
    Eigen::Vector2cd v = s0;
    ReducedState r = reduced_initial(p);
    for (unsigned k = 0; k < p.iterations; ++k) {
      v = l * v;
      r = reduced_step(r, p);
      EXPECT_NEAR(std::abs(v(0) - r.a_target), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(v(1) - r.a_rest), 0.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(r.a_target), 1.0, 1e-9);
  }
}

TEST(ReducedModel, SimulatorProjectionTracksTrajectory) {
  for (const auto& pr : presets()) {
    for (Variant v : {Variant::ModifiedCanonical, Variant::OptimizedMerged}) {
      const SearchSpec s = pr.spec(v);
      const BuiltCircuit b = build_circuit(s);
      ReducedState r = reduced_initial(b.params);
      unsigned k = 0;
      double sign = 1.0;
      run(b.circuit(), [&](std::size_t i, const StateVector& st) {
        const bool init_end = i + 1 == s.n;
        const bool iter_end = b.blocks().back().end == i + 1 ||
                              (i + 1 > s.n && std::any_of(b.blocks().begin(), b.blocks().end(),
                                                          [&](const Block& bl) {
                                                            return bl.end == i + 1 &&
                                                                   bl.label.ends_with("diffusion");
                                                          }));
        if (!init_end && !iter_end) return;
        if (iter_end) {
          r = reduced_step(r, b.params);
          sign = -sign;
          ++k;
        }
        const Projection pj = project_reduced(st, s.targets);
        EXPECT_LT(pj.residual, 1e-9);
        EXPECT_NEAR(std::abs(sign * pj.reduced.a_target - r.a_target), 0.0, 1e-9) << pr.name;
        EXPECT_NEAR(std::abs(sign * pj.reduced.a_rest - r.a_rest), 0.0, 1e-9) << pr.name;
      });
      EXPECT_EQ(k, b.params.iterations);
      EXPECT_NEAR(std::abs(r.a_target), 1.0, 1e-9);
      const double arg = std::arg(r.a_target);
      const double got = arg < 0 ? arg + 2 * kPi : arg;
      const double want = reduced_model_final_phase(b.params);
      EXPECT_NEAR(std::abs(std::polar(1.0, got) - std::polar(1.0, want)), 0.0, 1e-9) << pr.name;
    }
  }
}

}  // namespace
