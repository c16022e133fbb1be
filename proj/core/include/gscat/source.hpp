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

#ifndef GSCAT_SOURCE_HPP
#define GSCAT_SOURCE_HPP

#include <vector>

#include "gscat/spectral.hpp"

namespace gscat {

/// Gaussian-in-k coherent forcing d exp(-w (k - k_d)^2) applied at one
/// interior vertex.
struct SourceSpec {
  int vertex = 1;
  double amplitude = 1.0;
  double width = 50.0;       // inverse-variance units of k^2
  double center = 1.0;       // k_d in (0, 2)

  SourceSpec with_vertex(int v) const {
    SourceSpec s = *this;
    s.vertex = v;
    return s;
  }
};

/// Deviation rho(k) = sum|b|^2 - sum|a|^2 of outgoing from incident power
/// under unit incident drive; identically zero without a source.
struct DefectSignature {
  KGrid grid;
  Eigen::VectorXd rho;
};

/// Ranked localization candidates, ascending misfit.
struct LocalizationEntry {
  int vertex = 0;
  double misfit = 0.0;
};

/// Forcing amplitude at wavenumber k.
double source_amplitude(const SourceSpec& spec, double k);

/// Block solve with the interior right-hand side augmented by the source
/// amplitude at the source vertex; reduces exactly to solve_point when the
/// amplitude is zero.
SpectralSolution solve_with_source(const ScatteringProblem& p, double k,
                                   const Eigen::VectorXcd& incident,
                                   const SourceSpec& spec);

/// rho(k) over a grid with unit incident amplitude on input_lead.
DefectSignature defect_signature(const ScatteringProblem& p, const KGrid& grid,
                                 int input_lead, const SourceSpec& spec);

/// Discrete L2 distance between two signatures on the same grid,
/// sqrt(sum (rho1 - rho2)^2 dk).
double signature_misfit(const DefectSignature& a, const DefectSignature& b);

/// Simulate a signature per candidate vertex and rank by misfit against the
/// observation. Vertices equivalent under a signature-preserving
/// automorphism come back with equal misfit; the ambiguity is fundamental.
std::vector<LocalizationEntry> localize_source(
    const ScatteringProblem& p, const DefectSignature& observed,
    const std::vector<int>& candidates, const SourceSpec& spec_template,
    int input_lead);

}  // namespace gscat

#endif  // GSCAT_SOURCE_HPP
