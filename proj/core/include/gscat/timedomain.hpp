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

#ifndef GSCAT_TIMEDOMAIN_HPP
#define GSCAT_TIMEDOMAIN_HPP

#include <Eigen/Sparse>

#include <functional>
#include <stdexcept>
#include <vector>

#include "gscat/spectral.hpp"

namespace gscat {

/// Raised when a wavepacket reaches the truncated end of a lead before the
/// simulation window closes; the caller should increase the lead length.
class WindowError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite realization of the lead-coupled problem: the graph plus one
/// truncated chain of `lead_length` nodes per lead. Interior edges carry
/// weight v^2, lead and attachment edges weight 1, so second differences
/// reproduce the coupled Helmholtz system under the harmonic ansatz.
class TruncatedAssembly {
 public:
  struct Edge {
    int i, j;
    double w;
  };

  TruncatedAssembly(ScatteringProblem problem, int lead_length);

  const ScatteringProblem& problem() const { return problem_; }
  int lead_length() const { return lead_length_; }
  int node_count() const { return node_count_; }

  int graph_node(int vertex) const { return vertex - 1; }
  int lead_node(int lead, int j) const {
    return problem_.graph().order() + (lead - 1) * lead_length_ + j;
  }

  const Eigen::SparseMatrix<double>& laplacian() const { return lap_; }
  const std::vector<Edge>& assembly_edges() const { return edges_; }

 private:
  ScatteringProblem problem_;
  int lead_length_;
  int node_count_;
  Eigen::SparseMatrix<double> lap_;
  std::vector<Edge> edges_;
};

TruncatedAssembly build_assembly(const ScatteringProblem& p, int lead_length);

/// Right-moving Gaussian wavepacket launched on one lead toward the graph.
struct PacketSpec {
  double carrier_k = 1.0;  // carrier wavenumber in (0, 2)
  double sigma = 10.0;     // envelope width in nodes
  int center = 500;        // launch node index on the input lead
  double amplitude = 1.0;
  int input_lead = 1;

  double carrier_alpha() const;
  double group_velocity() const;  // dk/dalpha at the carrier
  double bandwidth() const;       // group_velocity / sigma

  static PacketSpec from_bandwidth(double carrier_k, double bandwidth,
                                   int center, int input_lead = 1,
                                   double amplitude = 1.0);
};

struct TraceRow {
  double t = 0.0;
  double graph = 0.0;
  std::vector<double> leads;
  double total = 0.0;
};

/// Scattered-energy bookkeeping after the window closes. Energies are the
/// discrete wave energy (kinetic plus potential) summed over each region;
/// the drift is measured on the exactly conserved discrete invariant of
/// the leapfrog scheme.
struct PacketEnergies {
  double incident = 0.0;
  double reflected = 0.0;
  double transmitted = 0.0;
  std::vector<double> lead_energy;  // per lead at t_end
  double graph_residual = 0.0;
  double reflected_ratio = 0.0;
  double transmitted_ratio = 0.0;
  double energy_drift = 0.0;
  std::vector<TraceRow> trace;
};

struct SimulateOptions {
  double dt = 0.05;
  int margin = 50;           // nodes next to the graph excluded from leads
  int check_interval = 200;  // steps between window/energy checks
  double window_tol = 1e-6;  // energy fraction allowed near the lead ends
  bool record_trace = true;
};

/// Leapfrog (velocity-Verlet) integration of u'' = L u up to t_end.
PacketEnergies simulate_packet(const TruncatedAssembly& a,
                               const PacketSpec& packet, double t_end,
                               const SimulateOptions& options = {});

/// A window long enough for the packet to scatter and clear the graph.
double default_t_end(const PacketSpec& packet);

struct SpectralComparison {
  double spectral_prediction = 0.0;  // bandwidth-weighted mean transmission
  double simulated = 0.0;            // transmitted-energy ratio
  double relative_error = 0.0;
  PacketEnergies energies;
};

/// Cross-validates the time-domain transmitted-energy ratio against the
/// packet-power-weighted average of the swept transmission. Throws
/// std::invalid_argument when the packet bandwidth is not covered by the
/// sweep grid.
SpectralComparison compare_with_spectral(const TruncatedAssembly& a,
                                         const PacketSpec& packet,
                                         const SweepResult& swept,
                                         const SimulateOptions& options = {});

/// Raw integrator state, exposed for reversibility checks and driven runs.
struct WaveState {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double t = 0.0;
};

WaveState initial_packet_state(const TruncatedAssembly& a,
                               const PacketSpec& packet);

/// Advance `steps` leapfrog steps; `forcing`, when given, adds
/// forcing(t) * e_node to the acceleration.
void advance(const TruncatedAssembly& a, WaveState& state, int steps,
             double dt,
             const std::function<double(double)>* forcing = nullptr,
             int forcing_node = -1);

/// Kinetic plus potential energy over a node subset (edges count when both
/// endpoints belong to the subset).
double region_energy(const TruncatedAssembly& a, const WaveState& state,
                     const std::vector<bool>& in_region);

}  // namespace gscat

#endif  // GSCAT_TIMEDOMAIN_HPP
