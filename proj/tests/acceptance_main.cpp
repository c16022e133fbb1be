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

// End-to-end acceptance runs. Every check states its tolerance inline and
// prints exactly one PASS/FAIL line; the process exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gscat/source.hpp"
#include "gscat/spectral.hpp"
#include "gscat/timedomain.hpp"
#include "test_util.hpp"

namespace {

using namespace gscat;

const double kSqrt3 = std::sqrt(3.0);

ScatteringProblem k3_problem(double impedance = 1.0) {
  return ScatteringProblem(Graph(3, {{1, 2}, {1, 3}, {2, 3}}),
                           LeadConfig({3, 1}), impedance);
}

ScatteringProblem p2_problem() {
  return ScatteringProblem(Graph(2, {{1, 2}}), LeadConfig({1, 2}));
}

Graph grid9() {
  return Graph(9, {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {3, 6}, {4, 5},
                   {5, 6}, {4, 7}, {5, 8}, {6, 9}, {7, 8}, {8, 9}});
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  template <typename T>
  Check& operator<<(const T& v) {
    detail << v;
    return *this;
  }
  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int g_failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<void(Check&)>& body) {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail << " [exception: " << e.what() << "]";
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (elapsed >= budget_seconds) {
    check.ok = false;
    check.detail << " [runtime " << elapsed << " s exceeds "
                 << budget_seconds << " s]";
  }
  if (!check.ok) ++g_failures;
  std::printf("[%s] criterion %d: %s (%s; %.2f s)\n",
              check.ok ? "PASS" : "FAIL", number, title.c_str(),
              check.detail.str().c_str(), elapsed);
  std::fflush(stdout);
}

double exit_power(const ScatteringProblem& p, double k, int input_lead,
                  int exit_lead) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(p.lead_count());
  a(input_lead - 1) = 1.0;
  return std::norm(solve_point(p, k, a).outgoing(exit_lead - 1));
}

/// Limit analysis at the band edges, independent of the sweep machinery.
/// At k -> 0 the identity (D0 - A0 + Dtilde) 1_n = W 1_l forces the lead
/// phase matrix onto the all-ones vector, so S(0+) = (2/l) J - I; two leads
/// then transmit perfectly. At k -> 2 a bounded alternating solution exists
/// exactly when W 1_l is orthogonal to the null space of
/// v^2 L0 - Dtilde + 4 I.
bool edge_oracle_predicts_transparency(const ScatteringProblem& p,
                                       Check& check) {
  const int n = p.graph().order();
  const Eigen::MatrixXd w = p.lead_matrix();
  const Eigen::VectorXd w_ones = w * Eigen::VectorXd::Ones(p.lead_count());

  const Eigen::MatrixXd f0 = -(laplacian(p.graph()) -
                               Eigen::MatrixXd(
                                   (w * w.transpose()).diagonal().asDiagonal()));
  check.require((f0 * Eigen::VectorXd::Ones(n) - w_ones).norm() == 0.0,
                "k->0 identity F0*1 = W*1");

  Eigen::MatrixXd g = p.impedance() * p.impedance() * laplacian(p.graph());
  g -= w * w.transpose();
  g.diagonal().array() += 4.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  bool compatible = true;
  for (int i = 0; i < n; ++i) {
    if (sv(i) < 1e-10 * sv(0)) {
      compatible = compatible &&
                   std::abs(svd.matrixV().col(i).dot(w_ones)) <= 1e-12;
    }
  }
  check.require(compatible, "k->2 null space orthogonal to W*1");
  return check.ok;
}

struct EdgeLimit {
  double f1, f2, f3;  // exit power at shrinking offsets (ratio 10)
  bool monotone_to_one() const { return f1 < f2 && f2 < f3 && f3 < 1.0; }
  double richardson() const {
    const double d1 = f2 - f1, d2 = f3 - f2;
    if (!(d1 > 0.0) || !(d2 > 0.0) || d1 / d2 <= 1.01) return f3;
    return f3 + d2 / (d1 / d2 - 1.0);
  }
};

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  // 1 -----------------------------------------------------------------
  criterion(1, "K3 total reflection at sqrt(3)", 1.0, [](Check& c) {
    const auto p = k3_problem();
    const auto swept = sweep(p, KGrid::standard(2000), 2);
    const auto dips = find_total_reflections(swept, 1, 0.5);
    c.require(dips.size() == 1, "exactly one reflection dip");
    if (dips.empty()) return;
    const double k_ref = dips[0].k;
    c.require(std::abs(k_ref - kSqrt3) <= 1e-4, "dip within 1e-4 of sqrt3");
    const double exit = exit_power(p, k_ref, 2, 1);
    const double back = exit_power(p, k_ref, 2, 2);
    c.require(exit <= 1e-6, "exit |a|^2 <= 1e-6");
    c.require(back >= 1.0 - 1e-6, "input |b|^2 >= 1 - 1e-6");
    c << "dip at k = " << k_ref << ", exit power " << exit;
  });

  // 2 -----------------------------------------------------------------
  criterion(2, "energy conservation over a 2000-point K3 sweep", 1.0,
            [](Check& c) {
    const auto swept = sweep(k3_problem(), KGrid::standard(2000), 2);
    const double worst = swept.conservation_residual().cwiseAbs().maxCoeff();
    c.require(worst <= 1e-9, "max residual <= 1e-9");
    c << "max |sum|b|^2 - sum|a|^2| = " << worst;
  });

  // 3 -----------------------------------------------------------------
  criterion(3, "band-edge transparency of K3", 1.0, [](Check& c) {
    const auto p = k3_problem();
    c.require(edge_oracle_predicts_transparency(p, c),
              "limit analysis predicts transparency");

    const EdgeLimit low{exit_power(p, 1e-2, 2, 1), exit_power(p, 1e-3, 2, 1),
                        exit_power(p, 1e-4, 2, 1)};
    const EdgeLimit high{exit_power(p, 2.0 - 1e-2, 2, 1),
                         exit_power(p, 2.0 - 1e-3, 2, 1),
                         exit_power(p, 2.0 - 1e-4, 2, 1)};
    c.require(low.monotone_to_one(), "monotone convergence at k -> 0");
    c.require(high.monotone_to_one(), "monotone convergence at k -> 2");
    c.require(std::abs(low.richardson() - 1.0) <= 1e-3,
              "k -> 0 extrapolated limit within 1e-3 of 1");
    c.require(std::abs(high.richardson() - 1.0) <= 1e-3,
              "k -> 2 extrapolated limit within 1e-3 of 1");
    c << "limits " << low.richardson() << " and " << high.richardson();
  });

  // 4 -----------------------------------------------------------------
  criterion(4, "unitarity and reciprocity on random graphs", 10.0,
            [](Check& c) {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> kdist(0.02, 1.98);
    double worst_unitary = 0.0, worst_symmetry = 0.0;
    int samples = 0;

    for (int g = 0; g < 20; ++g) {
      std::uniform_int_distribution<int> size(4, 12);
      const int n = size(rng);
      const Graph graph = testing::random_connected_graph(rng, n, n / 2 + 1);
      std::uniform_int_distribution<int> nleads(2, std::min(4, n));
      ScatteringProblem p(graph,
                          LeadConfig(testing::random_leads(
                              rng, n, nleads(rng))));

      int accepted = 0, attempts = 0;
      while (accepted < 50 && attempts < 5000) {
        ++attempts;
        const double k = kdist(rng);
        // stay clear of interior resonances so S is well conditioned
        Eigen::MatrixXd f = p.interior_operator();
        f.diagonal().array() += k * k;
        if (Eigen::PartialPivLU<Eigen::MatrixXd>(f).rcond() < 1e-6) continue;
        const auto s = s_matrix(p, k);
        worst_unitary = std::max(worst_unitary, s.unitarity_error());
        worst_unitary = std::max(
            worst_unitary,
            (s.entries.adjoint() * s.entries -
             Eigen::MatrixXcd::Identity(p.lead_count(), p.lead_count()))
                .norm());
        worst_symmetry = std::max(worst_symmetry, s.symmetry_error());
        ++accepted;
        ++samples;
      }
      c.require(accepted == 50, "50 non-resonant samples per graph");
    }
    c.require(worst_unitary <= 1e-8, "||S S^H - I|| <= 1e-8");
    c.require(worst_symmetry <= 1e-8, "||S - S^T|| <= 1e-8");
    c << samples << " samples, worst unitarity " << worst_unitary
      << ", worst reciprocity " << worst_symmetry;
  });

  // 5 -----------------------------------------------------------------
  criterion(5, "impedance rescales the K3 reflection point", 3.0,
            [](Check& c) {
    for (double v : {1.0, 0.5, 0.25}) {
      const auto swept = sweep(k3_problem(v), KGrid::standard(2000), 2);
      const auto dips = find_total_reflections(swept, 1, 0.5);
      c.require(dips.size() == 1, "one dip at impedance " + std::to_string(v));
      if (dips.empty()) continue;
      c.require(std::abs(dips[0].k - v * kSqrt3) <= 1e-3,
                "dip at v*sqrt3 within 1e-3 (v=" + std::to_string(v) + ")");
      c << "v=" << v << " -> k=" << dips[0].k << "  ";
    }
  });

  // 6 -----------------------------------------------------------------
  criterion(6, "exit-vertex ranking on the 3x3 grid", 30.0, [](Check& c) {
    const auto report = rank_exit_vertices(grid9(), 1, {2, 3, 4, 5, 6, 7, 8, 9},
                                           1.0, KGrid::standard(2000));
    std::map<int, double> t;
    for (const auto& [j, val] : report.entries) t[j] = val;

    c.require(std::abs(t[2] - t[3]) <= 1e-6, "T2 = T3 within 1e-6");
    c.require(std::abs(t[4] - t[6]) <= 1e-6, "T4 = T6 within 1e-6");
    c.require(std::abs(t[7] - t[9]) <= 1e-6, "T7 = T9 within 1e-6");
    c.require(t[8] > t[9] && t[9] > t[2] && t[2] > t[4] && t[4] > t[5],
              "strict ordering T8 > T9 > T2 > T4 > T5");

    // informational only: the absolute targets assume the unrecoverable
    // vertex numbering of the reference table
    const std::map<int, double> table{{8, 0.78}, {9, 0.70}, {2, 0.62},
                                      {4, 0.47}, {5, 0.35}};
    int within = 0;
    std::ostringstream vals;
    for (const auto& [j, ref] : table) {
      if (std::abs(t[j] - ref) <= 0.02) ++within;
      vals << " T" << j << "=" << t[j];
    }
    c << "ordering ok;" << vals.str() << "; contingent +/-0.02 match "
      << within << "/5 (reported, not gating)";
  });

  // 7 -----------------------------------------------------------------
  criterion(7, "time-domain cross-validation of K3 transmission", 60.0,
            [](Check& c) {
    const auto p = k3_problem();
    const TruncatedAssembly assembly(p, 2000);
    const auto packet = PacketSpec::from_bandwidth(1.0, 0.1, 1000, 2);
    const auto swept = sweep(p, KGrid::standard(2000), 2);
    const auto cmp = compare_with_spectral(assembly, packet, swept);
    c.require(cmp.relative_error <= 0.05,
              "transmitted ratio within 5% of the spectral average");
    c.require(cmp.energies.energy_drift <= 1e-6, "energy drift <= 1e-6");
    c << "simulated " << cmp.simulated << " vs spectral "
      << cmp.spectral_prediction << " (rel err " << cmp.relative_error
      << "), drift " << cmp.energies.energy_drift;
  });

  // 8 -----------------------------------------------------------------
  criterion(8, "homogeneous-chain null test", 60.0, [](Check& c) {
    const auto p = p2_problem();
    const auto swept = sweep(p, KGrid::standard(2000), 1);
    const double worst = swept.outgoing_power().row(0).maxCoeff();
    c.require(worst <= 1e-10,
              "spectral |reflection|^2 <= 1e-10 at every sampled k");

    const TruncatedAssembly assembly(p, 800);
    const auto packet = PacketSpec::from_bandwidth(1.0, 0.1, 400);
    const auto energies = simulate_packet(assembly, packet,
                                          default_t_end(packet));
    c.require(energies.transmitted_ratio >= 1.0 - 1e-3 &&
                  energies.transmitted_ratio <= 1.0 + 1e-3,
              "time-domain transmission = 1 within 1e-3");
    c.require(energies.reflected_ratio <= 1e-6,
              "time-domain reflected energy <= 1e-6");
    c << "spectral worst " << worst << ", time-domain reflected ratio "
      << energies.reflected_ratio;
  });

  // 9 -----------------------------------------------------------------
  criterion(9, "defect signatures localize the source", 60.0, [](Check& c) {
    ScatteringProblem p(grid9(), LeadConfig({1, 8}));
    const KGrid grid = KGrid::standard(2000);
    const SourceSpec base{1, 1.0, 50.0, 1.0};
    const std::vector<int> reps = {2, 4, 5, 8, 9};

    std::map<int, DefectSignature> sigs;
    for (int v : reps) {
      sigs.emplace(v, defect_signature(p, grid, 1, base.with_vertex(v)));
    }

    // locality: support confined to |k - k_d| <= 5/sqrt(w_d)
    for (int v : reps) {
      const auto& sig = sigs.at(v);
      const double peak = sig.rho.cwiseAbs().maxCoeff();
      double outside = 0.0;
      for (int i = 0; i < grid.count(); ++i) {
        if (std::abs(grid.node(i) - base.center) > 5.0 / std::sqrt(base.width)) {
          outside = std::max(outside, std::abs(sig.rho(i)));
        }
      }
      c.require(outside < 1e-3 * peak,
                "locality for source vertex " + std::to_string(v));
    }

    // distinguishability
    double min_dist = 1e300;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        const auto& a = sigs.at(reps[i]);
        const auto& b = sigs.at(reps[j]);
        min_dist = std::min(min_dist, (a.rho - b.rho).norm() /
                                          std::max(a.rho.norm(),
                                                   b.rho.norm()));
      }
    }
    c.require(min_dist >= 0.05, "pairwise normalized distance >= 0.05");

    // noiseless localization, each representative in turn
    for (int v : reps) {
      const auto ranked = localize_source(p, sigs.at(v), reps, base, 1);
      c.require(ranked[0].vertex == v && ranked[0].misfit <= 1e-10,
                "noiseless recovery of vertex " + std::to_string(v));
    }

    // Monte-Carlo: 1% additive noise, 100 draws, source at vertex 8
    std::mt19937 rng(2718281);
    const auto& clean = sigs.at(8);
    std::normal_distribution<double> noise(
        0.0, 0.01 * clean.rho.cwiseAbs().maxCoeff());
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
      DefectSignature noisy = clean;
      for (int i = 0; i < noisy.rho.size(); ++i) noisy.rho(i) += noise(rng);
      double best = 1e300;
      int best_vertex = 0;
      for (const auto& [v, sig] : sigs) {
        const double m = signature_misfit(noisy, sig);
        if (m < best) {
          best = m;
          best_vertex = v;
        }
      }
      if (best_vertex == 8) ++hits;
    }
    c.require(hits >= 95, "noisy recovery in >= 95 of 100 trials");
    c << "min pairwise distance " << min_dist << ", noisy hits " << hits
      << "/100";
  });

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criterion(s) failed\n", g_failures);
  return 1;
}
