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

#include "gscat/scattering.hpp"

#include <cmath>

namespace gscat {

namespace {

using Complex = std::complex<double>;

constexpr double kBlockRcondFloor = 1e-12;   // cond > 1e12 flags resonant
constexpr double kSingularRatio = 1e-10;     // smin/smax threshold for F

void require_open_band(double k) {
  if (!(k > 0.0 && k < 2.0)) {
    throw std::domain_error("scattering: k = " + std::to_string(k) +
                            " outside the open propagating band (0, 2)");
  }
}

/// v^2 L0 - Dtilde + k^2 I, the negated F of the scattering formula.
Eigen::MatrixXd interior_at(const ScatteringProblem& p, double k) {
  Eigen::MatrixXd m = p.interior_operator();
  m.diagonal().array() += k * k;
  return m;
}

}  // namespace

ScatteringProblem::ScatteringProblem(Graph graph, LeadConfig leads,
                                     double impedance)
    : graph_(std::move(graph)),
      leads_(std::move(leads)),
      impedance_(impedance) {
  if (!(impedance_ > 0.0)) {
    throw std::invalid_argument("scattering: impedance must be positive");
  }
  leads_.validate_for(graph_);
  w_ = gscat::lead_matrix(graph_, leads_);
  interior_ = impedance_ * impedance_ * laplacian(graph_);
  interior_ -= (w_ * w_.transpose());  // Dtilde
}

double SMatrix::unitarity_error() const {
  const auto identity =
      Eigen::MatrixXcd::Identity(entries.rows(), entries.cols());
  return (entries * entries.adjoint() - identity).norm();
}

double SMatrix::symmetry_error() const {
  return (entries - entries.transpose()).norm();
}

GraphResonanceError::GraphResonanceError(double k, int null_dim)
    : std::runtime_error("graph resonance at k = " + std::to_string(k) +
                         " (null-space dimension " + std::to_string(null_dim) +
                         ")"),
      k_(k),
      null_dim_(null_dim) {}

double dispersion_alpha(double k) {
  if (!(k >= 0.0 && k <= 2.0)) {
    throw std::domain_error("dispersion: k = " + std::to_string(k) +
                            " outside the propagating band [0, 2]");
  }
  return 2.0 * std::asin(k / 2.0);
}

BlockSystem assemble_block_system(const ScatteringProblem& p, double k,
                                  const Eigen::VectorXcd& incident) {
  require_open_band(k);
  const int n = p.graph().order();
  const int l = p.lead_count();
  if (incident.size() != l) {
    throw std::invalid_argument(
        "scattering: incident vector length " +
        std::to_string(incident.size()) + " does not match lead count " +
        std::to_string(l));
  }

  const double alpha = dispersion_alpha(k);
  const Complex phase_in(std::cos(alpha), std::sin(alpha));    // e^{+ia}
  const Complex phase_out = std::conj(phase_in);               // e^{-ia}

  BlockSystem sys;
  sys.matrix = Eigen::MatrixXcd::Zero(n + l, n + l);
  sys.matrix.topLeftCorner(n, n) = interior_at(p, k).cast<Complex>();
  sys.matrix.topRightCorner(n, l) = p.lead_matrix().cast<Complex>();
  sys.matrix.bottomLeftCorner(l, n) =
      p.lead_matrix().transpose().cast<Complex>();
  sys.matrix.bottomRightCorner(l, l) =
      -phase_out * Eigen::MatrixXcd::Identity(l, l);

  sys.rhs = Eigen::VectorXcd::Zero(n + l);
  sys.rhs.head(n) = -(p.lead_matrix().cast<Complex>() * incident);
  sys.rhs.tail(l) = phase_in * incident;
  return sys;
}

SpectralSolution solve_point(const ScatteringProblem& p, double k,
                             const Eigen::VectorXcd& incident) {
  const auto sys = assemble_block_system(p, k, incident);
  const int n = p.graph().order();
  const int l = p.lead_count();

  SpectralSolution sol;
  sol.k = k;
  sol.alpha = dispersion_alpha(k);
  sol.incident = incident;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  if (lu.rcond() < kBlockRcondFloor) {
    // Bound state invisible to the leads; the interface values vanish and
    // the leads see a Dirichlet wall.
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

SMatrix s_matrix(const ScatteringProblem& p, double k) {
  require_open_band(k);
  const int l = p.lead_count();
  const Eigen::MatrixXd f = -interior_at(p, k);

  Eigen::PartialPivLU<Eigen::MatrixXd> flu(f);
  if (flu.rcond() < kBlockRcondFloor) {
    const auto check = is_graph_resonance(p, k);
    throw GraphResonanceError(
        k, check.resonant ? static_cast<int>(check.null_basis.cols()) : 1);
  }

  const Eigen::MatrixXd m = p.lead_matrix().transpose() *
                            flu.solve(p.lead_matrix());  // W^T F^{-1} W

  const double alpha = dispersion_alpha(k);
  const Complex phase_in(std::cos(alpha), std::sin(alpha));
  const Complex phase_out = std::conj(phase_in);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(l, l);

  const Eigen::MatrixXcd lhs = phase_out * identity - m.cast<Complex>();
  const Eigen::MatrixXcd rhs = phase_in * identity - m.cast<Complex>();

  SMatrix s;
  s.k = k;
  s.entries = -lhs.partialPivLu().solve(rhs);
  return s;
}

ResonanceCheck is_graph_resonance(const ScatteringProblem& p, double k) {
  require_open_band(k);
  const Eigen::MatrixXd a = interior_at(p, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // unit floor keeps the degenerate all-zero interior (n=1, k=1) singular
  const double threshold = kSingularRatio * std::max(sv(0), 1.0);

  int null_dim = 0;
  for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i) {
    if (sv(i) < threshold) {
      ++null_dim;
    } else {
      break;
    }
  }

  ResonanceCheck check;
  check.resonant = null_dim > 0;
  if (check.resonant) {
    check.null_basis = svd.matrixV().rightCols(null_dim);
  }
  return check;
}

bool neumann_bound_state_check(const ScatteringProblem& p, double k,
                               double tolerance) {
  require_open_band(k);
  const auto eig = eigenpairs(p.graph());
  const double target = (k * k) / (p.impedance() * p.impedance());
  const double scale =
      std::max(1.0, eig.values(eig.values.size() - 1));
  for (int i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values(i) - target) <= tolerance * scale) {
      return true;
    }
  }
  return false;
}

}  // namespace gscat
