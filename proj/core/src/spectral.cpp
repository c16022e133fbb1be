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

#include "gscat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gscat {

namespace {

Eigen::VectorXcd unit_incident(int lead_count, int input_lead) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(lead_count);
  a(input_lead - 1) = 1.0;
  return a;
}

void require_lead_index(const ScatteringProblem& p, int lead,
                        const char* what) {
  if (lead < 1 || lead > p.lead_count()) {
    throw std::invalid_argument(std::string(what) + " lead index " +
                                std::to_string(lead) + " out of range 1.." +
                                std::to_string(p.lead_count()));
  }
}

/// Exit-lead outgoing power at one k, for dip refinement.
double exit_power_at(const ScatteringProblem& p, int input_lead, int exit_lead,
                     double k) {
  const auto sol = solve_point(p, k, unit_incident(p.lead_count(), input_lead));
  return std::norm(sol.outgoing(exit_lead - 1));
}

/// Golden-section minimization of f on [lo, hi].
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

KGrid::KGrid(double k_min, double k_max, int count)
    : k_min_(k_min), k_max_(k_max), count_(count) {
  if (!(k_min > 0.0 && k_min < k_max && k_max < 2.0)) {
    throw std::invalid_argument(
        "grid: bounds must satisfy 0 < k_min < k_max < 2");
  }
  if (count < 2) {
    throw std::invalid_argument("grid: need at least 2 nodes");
  }
}

SweepResult::SweepResult(ScatteringProblem problem, KGrid grid, int input_lead)
    : problem_(std::move(problem)), grid_(grid), input_lead_(input_lead) {}

SweepResult sweep(const ScatteringProblem& p, const KGrid& grid,
                  int input_lead) {
  require_lead_index(p, input_lead, "sweep: input");
  const int l = p.lead_count();
  const int npts = grid.count();
  const auto incident = unit_incident(l, input_lead);

  SweepResult result(p, grid, input_lead);
  result.incident_power_.resize(l, npts);
  result.outgoing_power_.resize(l, npts);
  result.incident_phase_.resize(l, npts);
  result.outgoing_phase_.resize(l, npts);
  result.residual_.resize(npts);
  result.resonant_.assign(npts, false);
  result.alphas_.resize(npts);

  for (int i = 0; i < npts; ++i) {
    const auto sol = solve_point(p, grid.node(i), incident);
    result.alphas_[i] = sol.alpha;
    result.resonant_[i] = sol.resonant;
    double in_total = 0.0, out_total = 0.0;
    for (int lead = 0; lead < l; ++lead) {
      const double a2 = std::norm(sol.incident(lead));
      const double b2 = std::norm(sol.outgoing(lead));
      result.incident_power_(lead, i) = a2;
      result.outgoing_power_(lead, i) = b2;
      result.incident_phase_(lead, i) = std::arg(sol.incident(lead));
      result.outgoing_phase_(lead, i) = std::arg(sol.outgoing(lead));
      in_total += a2;
      out_total += b2;
    }
    result.residual_(i) = out_total - in_total;
  }
  return result;
}

double total_transmission(const SweepResult& s, int exit_lead) {
  require_lead_index(s.problem(), exit_lead, "transmission: exit");
  if (exit_lead == s.input_lead()) {
    throw std::invalid_argument(
        "transmission: exit lead must differ from input lead");
  }
  const auto& grid = s.grid();
  const auto power = s.outgoing_power().row(exit_lead - 1);

  double integral = 0.0;
  for (int i = 0; i + 1 < grid.count(); ++i) {
    integral += 0.5 * (power(i) + power(i + 1)) * grid.spacing();
  }
  // constant continuation to the band edges
  integral += power(0) * grid.k_min();
  integral += power(grid.count() - 1) * (2.0 - grid.k_max());
  return integral;
}

TransmissionReport rank_exit_vertices(const Graph& g, int input_vertex,
                                      const std::vector<int>& candidates,
                                      double impedance, const KGrid& grid) {
  if (candidates.empty()) {
    throw std::invalid_argument("ranking: candidate list is empty");
  }
  for (int j : candidates) {
    if (j == input_vertex) {
      throw std::invalid_argument(
          "ranking: candidate " + std::to_string(j) +
          " coincides with the input vertex");
    }
  }

  TransmissionReport report;
  report.input_vertex = input_vertex;
  report.entries.reserve(candidates.size());
  for (int j : candidates) {
    ScatteringProblem two_lead(g, LeadConfig({input_vertex, j}), impedance);
    const auto swept = sweep(two_lead, grid, 1);
    report.entries.emplace_back(j, total_transmission(swept, 2));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  return report;
}

std::vector<ReflectionDip> find_total_reflections(const SweepResult& s,
                                                  int exit_lead,
                                                  double threshold) {
  require_lead_index(s.problem(), exit_lead, "reflection search: exit");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument(
        "reflection search: threshold must lie in (0, 1)");
  }

  const auto& grid = s.grid();
  const auto power = s.outgoing_power().row(exit_lead - 1);
  const auto& p = s.problem();
  const int input = s.input_lead();

  const auto eig = eigenpairs(p.graph());
  std::vector<double> predicted;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double kp = p.impedance() * std::sqrt(std::max(0.0, eig.values(i)));
    if (kp > 0.0 && kp < 2.0) {
      predicted.push_back(kp);
    }
  }

  std::vector<ReflectionDip> dips;
  for (int i = 1; i + 1 < grid.count(); ++i) {
    if (!(power(i) < threshold)) continue;
    if (!(power(i) <= power(i - 1) && power(i) <= power(i + 1))) continue;
    // skip plateau duplicates
    if (power(i) == power(i - 1) && i > 1) continue;

    const double k_ref = golden_section_min(
        [&](double k) { return exit_power_at(p, input, exit_lead, k); },
        grid.node(i - 1), grid.node(i + 1), 1e-10);

    ReflectionDip dip;
    dip.k = k_ref;
    dip.exit_power = exit_power_at(p, input, exit_lead, k_ref);
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (std::abs(predicted[j] - k_ref) <= grid.spacing()) {
        dip.predicted_k = predicted[j];
        const double lam =
            predicted[j] * predicted[j] / (p.impedance() * p.impedance());
        dip.eigenvalue = lam;
        break;
      }
    }
    dips.push_back(dip);
  }
  return dips;
}

}  // namespace gscat
