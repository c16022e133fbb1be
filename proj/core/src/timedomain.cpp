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

#include "gscat/timedomain.hpp"

#include <cmath>

namespace gscat {

namespace {

/// Discrete invariant of the linear leapfrog scheme,
/// E = 0.5 |(u1 - u0)/dt|^2 - 0.5 u0^T L u1; exactly conserved up to
/// roundoff, unlike the instantaneous physical energy.
double discrete_energy(const Eigen::SparseMatrix<double>& lap,
                       const Eigen::VectorXd& u0, const Eigen::VectorXd& u1,
                       double dt) {
  const double kin = 0.5 * ((u1 - u0) / dt).squaredNorm();
  const double pot = -0.5 * u0.dot(lap * u1);
  return kin + pot;
}

}  // namespace

TruncatedAssembly::TruncatedAssembly(ScatteringProblem problem,
                                     int lead_length)
    : problem_(std::move(problem)), lead_length_(lead_length) {
  if (lead_length_ < 100) {
    throw std::invalid_argument(
        "assembly: lead length below 100 nodes cannot hold a packet");
  }
  const int n = problem_.graph().order();
  const int l = problem_.lead_count();
  node_count_ = n + l * lead_length_;

  const double w_int = problem_.impedance() * problem_.impedance();
  for (auto [u, v] : problem_.graph().edges()) {
    edges_.push_back({graph_node(u), graph_node(v), w_int});
  }
  for (int lead = 1; lead <= l; ++lead) {
    edges_.push_back(
        {graph_node(problem_.leads().attachment(lead)), lead_node(lead, 0),
         1.0});
    for (int j = 0; j + 1 < lead_length_; ++j) {
      edges_.push_back({lead_node(lead, j), lead_node(lead, j + 1), 1.0});
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * edges_.size());
  for (const auto& e : edges_) {
    triplets.emplace_back(e.i, e.j, e.w);
    triplets.emplace_back(e.j, e.i, e.w);
    triplets.emplace_back(e.i, e.i, -e.w);
    triplets.emplace_back(e.j, e.j, -e.w);
  }
  lap_.resize(node_count_, node_count_);
  lap_.setFromTriplets(triplets.begin(), triplets.end());
  lap_.makeCompressed();
}

TruncatedAssembly build_assembly(const ScatteringProblem& p, int lead_length) {
  return TruncatedAssembly(p, lead_length);
}

double PacketSpec::carrier_alpha() const { return dispersion_alpha(carrier_k); }

double PacketSpec::group_velocity() const {
  return std::cos(carrier_alpha() / 2.0);
}

double PacketSpec::bandwidth() const { return group_velocity() / sigma; }

PacketSpec PacketSpec::from_bandwidth(double carrier_k, double bandwidth,
                                      int center, int input_lead,
                                      double amplitude) {
  PacketSpec p;
  p.carrier_k = carrier_k;
  p.center = center;
  p.input_lead = input_lead;
  p.amplitude = amplitude;
  p.sigma = std::cos(dispersion_alpha(carrier_k) / 2.0) / bandwidth;
  return p;
}

WaveState initial_packet_state(const TruncatedAssembly& a,
                               const PacketSpec& packet) {
  const int nn = a.node_count();
  const int big_n = a.lead_length();
  if (packet.input_lead < 1 || packet.input_lead > a.problem().lead_count()) {
    throw std::invalid_argument("packet: input lead out of range");
  }
  if (packet.bandwidth() > 0.2) {
    throw std::invalid_argument(
        "packet: k-bandwidth above 0.2; widen the envelope");
  }
  if (packet.center - 6.0 * packet.sigma < 10.0 ||
      packet.center + 6.0 * packet.sigma > big_n - 10.0) {
    throw std::invalid_argument(
        "packet: launch center too close to the graph or the lead end");
  }

  const double alpha = packet.carrier_alpha();
  const double vg = packet.group_velocity();
  const double s2 = packet.sigma * packet.sigma;

  WaveState state{Eigen::VectorXd::Zero(nn), Eigen::VectorXd::Zero(nn), 0.0};
  for (int j = 0; j < big_n; ++j) {
    const double x = static_cast<double>(j) - packet.center;
    const double env = packet.amplitude * std::exp(-x * x / (2.0 * s2));
    if (env == 0.0) continue;
    const int node = a.lead_node(packet.input_lead, j);
    const double c = std::cos(alpha * j);
    const double s = std::sin(alpha * j);
    // analytic right-mover: env(j + vg t) e^{i(alpha j + k t)}
    state.u(node) = env * c;
    state.v(node) = env * (-vg * x / s2 * c - packet.carrier_k * s);
  }
  return state;
}

void advance(const TruncatedAssembly& a, WaveState& state, int steps,
             double dt, const std::function<double(double)>* forcing,
             int forcing_node) {
  const auto& lap = a.laplacian();
  Eigen::VectorXd acc = lap * state.u;
  if (forcing != nullptr) acc(forcing_node) += (*forcing)(state.t);
  for (int step = 0; step < steps; ++step) {
    state.u += dt * state.v + 0.5 * dt * dt * acc;
    Eigen::VectorXd acc_new = lap * state.u;
    if (forcing != nullptr) {
      acc_new(forcing_node) += (*forcing)(state.t + dt);
    }
    state.v += 0.5 * dt * (acc + acc_new);
    acc.swap(acc_new);
    state.t += dt;
  }
}

double region_energy(const TruncatedAssembly& a, const WaveState& state,
                     const std::vector<bool>& in_region) {
  double kin = 0.0;
  for (int i = 0; i < a.node_count(); ++i) {
    if (in_region[i]) kin += state.v(i) * state.v(i);
  }
  double pot = 0.0;
  for (const auto& e : a.assembly_edges()) {
    if (in_region[e.i] && in_region[e.j]) {
      const double d = state.u(e.i) - state.u(e.j);
      pot += e.w * d * d;
    }
  }
  return 0.5 * (kin + pot);
}

PacketEnergies simulate_packet(const TruncatedAssembly& a,
                               const PacketSpec& packet, double t_end,
                               const SimulateOptions& options) {
  const int nn = a.node_count();
  const int big_n = a.lead_length();
  const int l = a.problem().lead_count();
  const int n = a.problem().graph().order();
  const double dt = options.dt;
  if (!(t_end > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("simulate: need positive dt and t_end");
  }

  // region masks
  std::vector<std::vector<bool>> lead_region(l, std::vector<bool>(nn, false));
  std::vector<bool> lead_all(nn, false);
  std::vector<bool> graph_region(nn, false);
  for (int i = 0; i < n; ++i) graph_region[i] = true;
  for (int lead = 1; lead <= l; ++lead) {
    for (int j = 0; j < big_n; ++j) {
      const int node = a.lead_node(lead, j);
      lead_all[node] = true;
      if (j >= options.margin) {
        lead_region[lead - 1][node] = true;
      } else {
        graph_region[node] = true;  // near-graph skirt
      }
    }
  }
  std::vector<bool> everything(nn, true);

  WaveState state = initial_packet_state(a, packet);

  PacketEnergies out;
  out.incident = region_energy(a, state, everything);
  if (out.incident <= 0.0) {
    throw std::invalid_argument("simulate: packet carries no energy");
  }

  const int total_steps = static_cast<int>(std::ceil(t_end / dt));
  const auto& lap = a.laplacian();

  auto record = [&](double t) {
    if (!options.record_trace) return;
    TraceRow row;
    row.t = t;
    row.graph = region_energy(a, state, graph_region);
    row.leads.resize(l);
    for (int lead = 0; lead < l; ++lead) {
      row.leads[lead] = region_energy(a, state, lead_region[lead]);
    }
    row.total = region_energy(a, state, everything);
    out.trace.push_back(std::move(row));
  };
  record(0.0);

  double e_ref = 0.0;
  bool have_ref = false;
  int done = 0;
  while (done < total_steps) {
    const int chunk = std::min(options.check_interval, total_steps - done);
    advance(a, state, chunk, dt);
    done += chunk;

    // leapfrog invariant over the last step: the scheme is reversible, so
    // the previous position is recoverable exactly
    const Eigen::VectorXd acc = lap * state.u;
    const Eigen::VectorXd u_back =
        state.u - dt * state.v + 0.5 * dt * dt * acc;
    const double e_now = discrete_energy(lap, u_back, state.u, dt);
    if (!have_ref) {
      e_ref = e_now;
      have_ref = true;
    } else if (e_ref != 0.0) {
      out.energy_drift = std::max(out.energy_drift,
                                  std::abs(e_now - e_ref) / std::abs(e_ref));
    }

    for (int lead = 1; lead <= l; ++lead) {
      double tail = 0.0;
      for (int j = big_n - 20; j < big_n; ++j) {
        const int node = a.lead_node(lead, j);
        tail += 0.5 * state.v(node) * state.v(node);
        if (j + 1 < big_n) {
          const double d = state.u(node) - state.u(a.lead_node(lead, j + 1));
          tail += 0.5 * d * d;
        }
      }
      if (tail > options.window_tol * out.incident) {
        throw WindowError(
            "simulate: packet reached the truncated end of lead " +
            std::to_string(lead) + " at t = " + std::to_string(state.t) +
            "; increase the lead length");
      }
    }
    record(state.t);
  }

  out.lead_energy.resize(l);
  for (int lead = 1; lead <= l; ++lead) {
    out.lead_energy[lead - 1] = region_energy(a, state, lead_region[lead - 1]);
  }
  out.reflected = out.lead_energy[packet.input_lead - 1];
  out.transmitted = 0.0;
  for (int lead = 1; lead <= l; ++lead) {
    if (lead != packet.input_lead) out.transmitted += out.lead_energy[lead - 1];
  }
  out.graph_residual = region_energy(a, state, graph_region);
  out.reflected_ratio = out.reflected / out.incident;
  out.transmitted_ratio = out.transmitted / out.incident;
  return out;
}

double default_t_end(const PacketSpec& packet) {
  return 2.0 * packet.center / packet.group_velocity();
}

SpectralComparison compare_with_spectral(const TruncatedAssembly& a,
                                         const PacketSpec& packet,
                                         const SweepResult& swept,
                                         const SimulateOptions& options) {
  if (swept.input_lead() != packet.input_lead) {
    throw std::invalid_argument(
        "compare: sweep input lead differs from the packet's lead");
  }
  const auto& grid = swept.grid();
  const double bw = packet.bandwidth();
  if (packet.carrier_k - 3.0 * bw < grid.k_min() ||
      packet.carrier_k + 3.0 * bw > grid.k_max()) {
    throw std::invalid_argument(
        "compare: packet bandwidth extends outside the sweep grid");
  }

  // packet spectral power in k: |envelope FT|^2 with the wave-energy k^2
  // factor and the alpha->k Jacobian
  const double alpha_c = packet.carrier_alpha();
  const double s2 = packet.sigma * packet.sigma;
  double weight_sum = 0.0, weighted_t = 0.0;
  for (int i = 0; i < grid.count(); ++i) {
    const double k = grid.node(i);
    const double da = dispersion_alpha(k) - alpha_c;
    const double jac = 2.0 / std::sqrt(4.0 - k * k);
    const double w = k * k * std::exp(-s2 * da * da) * jac *
                     (i == 0 || i == grid.count() - 1 ? 0.5 : 1.0);
    double t_power = 0.0;
    for (int lead = 1; lead <= swept.problem().lead_count(); ++lead) {
      if (lead != swept.input_lead()) {
        t_power += swept.outgoing_power()(lead - 1, i);
      }
    }
    weight_sum += w;
    weighted_t += w * t_power;
  }

  SpectralComparison cmp;
  cmp.spectral_prediction = weighted_t / weight_sum;
  cmp.energies = simulate_packet(a, packet, default_t_end(packet), options);
  cmp.simulated = cmp.energies.transmitted_ratio;
  cmp.relative_error = std::abs(cmp.simulated - cmp.spectral_prediction) /
                       std::max(cmp.spectral_prediction, 1e-300);
  return cmp;
}

}  // namespace gscat
