// Copyright 2026 The gscat Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gscat/source.hpp"
#include "gscat/timedomain.hpp"

using namespace gscat;

namespace {

ScatteringProblem k3_problem() {
  return ScatteringProblem(Graph(3, {{1, 2}, {1, 3}, {2, 3}}),
                           LeadConfig({3, 1}));
}

ScatteringProblem grid9_problem() {
  return ScatteringProblem(
      Graph(9, {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {3, 6}, {4, 5},
                {5, 6}, {4, 7}, {5, 8}, {6, 9}, {7, 8}, {8, 9}}),
      LeadConfig({1, 8}));
}

double normalized_distance(const DefectSignature& a,
                           const DefectSignature& b) {
  return (a.rho - b.rho).norm() / std::max(a.rho.norm(), b.rho.norm());
}

}  // namespace

TEST_CASE("source amplitude closed forms") {
  SourceSpec s{2, 1.0, 50.0, 1.0};
  CHECK(source_amplitude(s, 1.0) == 1.0);
  CHECK(source_amplitude(s, 1.2) == doctest::Approx(std::exp(-2.0)));
  s.amplitude = 0.0;
  for (double k : {0.1, 0.9, 1.7}) CHECK(source_amplitude(s, k) == 0.0);
}

TEST_CASE("zero source reduces exactly to the plain solve") {
  const auto p = k3_problem();
  Eigen::VectorXcd a(2);
  a << 0.3, std::complex<double>(0.2, -0.7);
  const SourceSpec off{2, 0.0, 50.0, 1.0};
  for (double k : {0.4, 1.0, 1.6}) {
    const auto plain = solve_point(p, k, a);
    const auto forced = solve_with_source(p, k, a, off);
    CHECK((plain.phi - forced.phi).norm() == 0.0);
    CHECK((plain.outgoing - forced.outgoing).norm() == 0.0);
  }
}

TEST_CASE("a silent incident field still radiates from the source") {
  const auto p = k3_problem();
  const SourceSpec spec{2, 1.0, 50.0, 1.0};
  const auto sol = solve_with_source(p, 1.0, Eigen::VectorXcd::Zero(2), spec);
  CHECK(sol.outgoing.squaredNorm() > 1e-4);
  CHECK(std::abs(sol.outgoing(0)) > 0.0);
  CHECK(std::abs(sol.outgoing(1)) > 0.0);
}

TEST_CASE("driven time-domain run confirms the radiated power split") {
  // Independent check of the block solve: drive vertex 2 of K3 at k = 1 in
  // the time domain and compare the energy radiated into each lead with the
  // spectral amplitudes.
  const auto p = k3_problem();
  const double k = 1.0;
  const auto spectral =
      solve_with_source(p, k, Eigen::VectorXcd::Zero(2), SourceSpec{2, 1.0, 50.0, k});
  const double expected_ratio = std::norm(spectral.outgoing(0)) /
                                std::norm(spectral.outgoing(1));

  const TruncatedAssembly assembly(p, 400);
  WaveState state{Eigen::VectorXd::Zero(assembly.node_count()),
                  Eigen::VectorXd::Zero(assembly.node_count()), 0.0};
  const double t_ramp = 60.0;
  const std::function<double(double)> drive = [&](double t) {
    const double ramp = std::min(1.0, t / t_ramp);
    return -ramp * std::cos(k * t);
  };
  const double dt = 0.05;
  advance(assembly, state, static_cast<int>(300.0 / dt), dt, &drive,
          assembly.graph_node(2));

  // energy behind the radiation front, clear of the startup transient
  std::vector<bool> lead1(assembly.node_count(), false);
  std::vector<bool> lead2(assembly.node_count(), false);
  for (int j = 40; j < 220; ++j) {
    lead1[assembly.lead_node(1, j)] = true;
    lead2[assembly.lead_node(2, j)] = true;
  }
  const double e1 = region_energy(assembly, state, lead1);
  const double e2 = region_energy(assembly, state, lead2);
  CHECK(e1 > 0.0);
  CHECK(e2 > 0.0);
  CHECK(e1 / e2 == doctest::Approx(expected_ratio).epsilon(0.15));
}

TEST_CASE("radiated power scales quadratically with the source amplitude") {
  const auto p = grid9_problem();
  const Eigen::VectorXcd silent = Eigen::VectorXcd::Zero(2);
  for (double k : {0.8, 1.0, 1.3}) {
    const SourceSpec d1{2, 1.0, 50.0, 1.0};
    const SourceSpec d2{2, 2.0, 50.0, 1.0};
    const double p1 = solve_with_source(p, k, silent, d1).outgoing.squaredNorm();
    const double p2 = solve_with_source(p, k, silent, d2).outgoing.squaredNorm();
    CHECK(std::abs(p2 - 4.0 * p1) <= 1e-9 * std::max(1.0, p2));
  }
}

TEST_CASE("incident field and source superpose") {
  const auto p = grid9_problem();
  Eigen::VectorXcd a(2);
  a << std::complex<double>(0.6, 0.1), std::complex<double>(-0.2, 0.4);
  const SourceSpec spec{4, 0.7, 50.0, 1.2};
  for (double k : {0.5, 1.2, 1.8}) {
    const auto both = solve_with_source(p, k, a, spec);
    const auto waves_only = solve_point(p, k, a);
    const auto source_only =
        solve_with_source(p, k, Eigen::VectorXcd::Zero(2), spec);
    const Eigen::VectorXcd sum = waves_only.outgoing + source_only.outgoing;
    CHECK((both.outgoing - sum).norm() <= 1e-10 * std::max(1.0, sum.norm()));
  }
}

TEST_CASE("signature vanishes without a source") {
  const auto sig = defect_signature(grid9_problem(), KGrid::standard(300), 1,
                                    SourceSpec{2, 0.0, 50.0, 1.0});
  CHECK(sig.rho.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("signature concentrates around the source center frequency") {
  const auto p = grid9_problem();
  const double w = 50.0;
  for (double kd : {0.5, 1.0, 1.5}) {
    const auto sig = defect_signature(p, KGrid::standard(1500), 1,
                                      SourceSpec{2, 1.0, w, kd});
    const double peak = sig.rho.cwiseAbs().maxCoeff();
    CHECK(peak > 0.0);

    int peak_at = 0;
    sig.rho.cwiseAbs().maxCoeff(&peak_at);
    CHECK(std::abs(sig.grid.node(peak_at) - kd) <= 3.0 / std::sqrt(w));

    for (int i = 0; i < sig.grid.count(); ++i) {
      if (std::abs(sig.grid.node(i) - kd) > 5.0 / std::sqrt(w)) {
        CHECK(std::abs(sig.rho(i)) < 1e-3 * peak);
      }
    }
  }
}

TEST_CASE("signatures separate the inequivalent vertices") {
  const auto p = grid9_problem();
  const KGrid grid = KGrid::standard(1200);
  const SourceSpec base{2, 1.0, 50.0, 1.0};
  const std::vector<int> reps = {2, 4, 5, 8, 9};

  std::vector<DefectSignature> sigs;
  for (int v : reps) {
    sigs.push_back(defect_signature(p, grid, 1, base.with_vertex(v)));
  }
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (std::size_t j = i + 1; j < sigs.size(); ++j) {
      CHECK(normalized_distance(sigs[i], sigs[j]) >= 0.05);
    }
  }

  // the mirror-equivalent pair is indistinguishable in principle
  const auto sig3 = defect_signature(p, grid, 1, base.with_vertex(3));
  CHECK(signature_misfit(sigs[0], sig3) <= 1e-9);
}

TEST_CASE("localization is self-consistent and respects the symmetry") {
  const auto p = grid9_problem();
  const KGrid grid = KGrid::standard(800);
  const SourceSpec base{5, 1.0, 50.0, 1.0};

  const auto observed = defect_signature(p, grid, 1, base);
  const auto ranked = localize_source(p, observed, {2, 4, 5, 8, 9}, base, 1);
  REQUIRE(ranked.size() == 5);
  CHECK(ranked[0].vertex == 5);
  CHECK(ranked[0].misfit <= 1e-10);
  CHECK(ranked[1].misfit > 1e-6);

  const auto from2 = defect_signature(p, grid, 1, base.with_vertex(2));
  const auto amb = localize_source(p, from2, {2, 3, 4, 5}, base, 1);
  CHECK(std::abs(amb[0].misfit - amb[1].misfit) <= 1e-9);
  CHECK(((amb[0].vertex == 2 && amb[1].vertex == 3) ||
         (amb[0].vertex == 3 && amb[1].vertex == 2)));
}

TEST_CASE("localization survives mild additive noise") {
  const auto p = grid9_problem();
  const KGrid grid = KGrid::standard(800);
  const SourceSpec base{8, 1.0, 50.0, 1.0};
  auto observed = defect_signature(p, grid, 1, base);
  const double noise_amp = 0.01 * observed.rho.cwiseAbs().maxCoeff();

  std::mt19937 rng(99);
  std::normal_distribution<double> noise(0.0, noise_amp);
  int hits = 0;
  const int trials = 15;
  for (int t = 0; t < trials; ++t) {
    DefectSignature noisy = observed;
    for (int i = 0; i < noisy.rho.size(); ++i) noisy.rho(i) += noise(rng);
    const auto ranked = localize_source(p, noisy, {2, 4, 5, 8, 9}, base, 1);
    if (ranked[0].vertex == 8) ++hits;
  }
  CHECK(hits == trials);
}

TEST_CASE("source argument validation") {
  const auto p = k3_problem();
  CHECK_THROWS_AS(solve_with_source(p, 1.0, Eigen::VectorXcd::Zero(2),
                                    SourceSpec{7, 1.0, 50.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_with_source(p, 1.0, Eigen::VectorXcd::Zero(2),
                                    SourceSpec{1, 1.0, -2.0, 1.0}),
                  std::invalid_argument);
  const auto sig = defect_signature(p, KGrid::standard(64), 1,
                                    SourceSpec{2, 1.0, 50.0, 1.0});
  CHECK_THROWS_AS(localize_source(p, sig, {}, SourceSpec{}, 1),
                  std::invalid_argument);
}
