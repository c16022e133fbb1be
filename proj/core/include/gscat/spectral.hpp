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

#ifndef GSCAT_SPECTRAL_HPP
#define GSCAT_SPECTRAL_HPP

#include <optional>
#include <vector>

#include "gscat/scattering.hpp"

namespace gscat {

/// Uniform wavenumber grid strictly inside the propagating band (0, 2).
class KGrid {
 public:
  KGrid(double k_min, double k_max, int count);

  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }
  int count() const { return count_; }
  double spacing() const { return (k_max_ - k_min_) / (count_ - 1); }
  double node(int i) const { return k_min_ + i * spacing(); }

  /// Default sweep grid: 2000 points on [1e-3, 2 - 1e-3].
  static KGrid standard(int count = 2000) {
    return KGrid(1e-3, 2.0 - 1e-3, count);
  }

 private:
  double k_min_, k_max_;
  int count_;
};

/// Spectra of a unit-amplitude sweep: per-lead incident/outgoing power and
/// phase at every grid node, plus the conservation residual
/// sum|b|^2 - sum|a|^2 (zero to solver precision away from flagged points).
class SweepResult {
 public:
  const ScatteringProblem& problem() const { return problem_; }
  const KGrid& grid() const { return grid_; }
  int input_lead() const { return input_lead_; }

  // lead-major storage: row = lead (0-based), col = grid node
  const Eigen::MatrixXd& incident_power() const { return incident_power_; }
  const Eigen::MatrixXd& outgoing_power() const { return outgoing_power_; }
  const Eigen::MatrixXd& incident_phase() const { return incident_phase_; }
  const Eigen::MatrixXd& outgoing_phase() const { return outgoing_phase_; }
  const Eigen::VectorXd& conservation_residual() const { return residual_; }
  const std::vector<bool>& resonant_flags() const { return resonant_; }

  double transmission(int exit_lead, int node) const {
    return outgoing_power_(exit_lead - 1, node);
  }
  double alpha(int node) const { return alphas_[node]; }

 private:
  friend SweepResult sweep(const ScatteringProblem&, const KGrid&, int);

  SweepResult(ScatteringProblem problem, KGrid grid, int input_lead);

  ScatteringProblem problem_;
  KGrid grid_;
  int input_lead_;
  Eigen::MatrixXd incident_power_, outgoing_power_;
  Eigen::MatrixXd incident_phase_, outgoing_phase_;
  Eigen::VectorXd residual_;
  std::vector<bool> resonant_;
  std::vector<double> alphas_;
};

/// Candidate exit vertices ranked by band-integrated transmission.
struct TransmissionReport {
  int input_vertex = 0;
  std::vector<std::pair<int, double>> entries;  // (vertex, T_j), descending
};

/// A refined transmission minimum, optionally matched to a bound-state
/// prediction k = v sqrt(lambda) from the interior spectrum.
struct ReflectionDip {
  double k = 0.0;
  double exit_power = 0.0;
  std::optional<double> predicted_k;
  std::optional<double> eigenvalue;
};

/// Solve with unit incident amplitude on input_lead at every grid node.
/// Resonant points are flagged, never dropped.
SweepResult sweep(const ScatteringProblem& p, const KGrid& grid,
                  int input_lead);

/// Band-integrated transmitted power T = int_0^2 |b_exit(k)|^2 dk by the
/// composite trapezoid rule, extended to the band edges by constant
/// continuation of the first and last samples. Throws
/// std::invalid_argument when exit_lead equals the sweep's input lead.
double total_transmission(const SweepResult& s, int exit_lead);

/// For each candidate j, build the two-lead problem (input_vertex, j),
/// sweep, and integrate; entries come back sorted descending by T_j.
TransmissionReport rank_exit_vertices(const Graph& g, int input_vertex,
                                      const std::vector<int>& candidates,
                                      double impedance, const KGrid& grid);

/// Local minima of exit-lead power below `threshold`, refined by
/// golden-section search between the neighboring grid nodes.
std::vector<ReflectionDip> find_total_reflections(const SweepResult& s,
                                                  int exit_lead,
                                                  double threshold);

}  // namespace gscat

#endif  // GSCAT_SPECTRAL_HPP
