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

#include "gscat/source.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gscat {

namespace {

void require_source_vertex(const ScatteringProblem& p, const SourceSpec& s) {
  if (s.vertex < 1 || s.vertex > p.graph().order()) {
    throw std::invalid_argument("source: vertex " + std::to_string(s.vertex) +
                                " out of range 1.." +
                                std::to_string(p.graph().order()));
  }
  if (!(s.width > 0.0)) {
    throw std::invalid_argument("source: width must be positive");
  }
}

}  // namespace

double source_amplitude(const SourceSpec& spec, double k) {
  const double dk = k - spec.center;
  return spec.amplitude * std::exp(-spec.width * dk * dk);
}

SpectralSolution solve_with_source(const ScatteringProblem& p, double k,
                                   const Eigen::VectorXcd& incident,
                                   const SourceSpec& spec) {
  require_source_vertex(p, spec);
  auto sys = assemble_block_system(p, k, incident);
  sys.rhs(spec.vertex - 1) += source_amplitude(spec, k);

  const int n = p.graph().order();
  const int l = p.lead_count();

  SpectralSolution sol;
  sol.k = k;
  sol.alpha = dispersion_alpha(k);
  sol.incident = incident;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  if (lu.rcond() < 1e-12) {
    sol.phi = Eigen::VectorXcd::Zero(n);
    sol.outgoing = -incident;
    sol.resonant = true;
    return sol;
  }
  const Eigen::VectorXcd x = lu.solve(sys.rhs);
  sol.phi = x.head(n);
  sol.outgoing = x.tail(l);
  return sol;
}

DefectSignature defect_signature(const ScatteringProblem& p, const KGrid& grid,
                                 int input_lead, const SourceSpec& spec) {
  if (input_lead < 1 || input_lead > p.lead_count()) {
    throw std::invalid_argument("signature: input lead out of range");
  }
  require_source_vertex(p, spec);

  Eigen::VectorXcd incident = Eigen::VectorXcd::Zero(p.lead_count());
  incident(input_lead - 1) = 1.0;

  DefectSignature sig{grid, Eigen::VectorXd(grid.count())};
  for (int i = 0; i < grid.count(); ++i) {
    const auto sol = solve_with_source(p, grid.node(i), incident, spec);
    sig.rho(i) = sol.outgoing.squaredNorm() - sol.incident.squaredNorm();
  }
  return sig;
}

double signature_misfit(const DefectSignature& a, const DefectSignature& b) {
  if (a.grid.count() != b.grid.count() ||
      a.grid.k_min() != b.grid.k_min() || a.grid.k_max() != b.grid.k_max()) {
    throw std::invalid_argument("misfit: signatures must share a grid");
  }
  return std::sqrt((a.rho - b.rho).squaredNorm() * a.grid.spacing());
}

std::vector<LocalizationEntry> localize_source(
    const ScatteringProblem& p, const DefectSignature& observed,
    const std::vector<int>& candidates, const SourceSpec& spec_template,
    int input_lead) {
  if (candidates.empty()) {
    throw std::invalid_argument("localize: candidate list is empty");
  }

  std::vector<LocalizationEntry> ranking;
  ranking.reserve(candidates.size());
  for (int v : candidates) {
    const auto sim = defect_signature(p, observed.grid, input_lead,
                                      spec_template.with_vertex(v));
    ranking.push_back({v, signature_misfit(observed, sim)});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const LocalizationEntry& a, const LocalizationEntry& b) {
                     return a.misfit < b.misfit;
                   });
  return ranking;
}

}  // namespace gscat
