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

#ifndef GSCAT_SCATTERING_HPP
#define GSCAT_SCATTERING_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

#include "gscat/graph.hpp"

namespace gscat {

/// A graph with attached semi-infinite leads and an interior coupling
/// strength v (the interior Laplacian enters every solve as v^2 L0).
/// Immutable; all per-k evaluations on it are stateless and may run
/// concurrently.
class ScatteringProblem {
 public:
  ScatteringProblem(Graph graph, LeadConfig leads, double impedance = 1.0);

  const Graph& graph() const { return graph_; }
  const LeadConfig& leads() const { return leads_; }
  double impedance() const { return impedance_; }
  int lead_count() const { return leads_.count(); }

  /// v^2 L0 - Dtilde (cached; k^2 I is added per solve).
  const Eigen::MatrixXd& interior_operator() const { return interior_; }
  const Eigen::MatrixXd& lead_matrix() const { return w_; }

 private:
  Graph graph_;
  LeadConfig leads_;
  double impedance_;
  Eigen::MatrixXd interior_;
  Eigen::MatrixXd w_;
};

/// One frequency point of the lead-coupled Helmholtz solve.
/// `incident` holds the given amplitudes a, `outgoing` the solved
/// amplitudes b, `phi` the interior node values. With zero source the
/// outgoing norm equals the incident norm (unitarity).
struct SpectralSolution {
  double k = 0.0;
  double alpha = 0.0;
  Eigen::VectorXcd phi;
  Eigen::VectorXcd incident;
  Eigen::VectorXcd outgoing;
  bool resonant = false;
};

/// Unitary, symmetric lead-to-lead scattering matrix at one wavenumber.
struct SMatrix {
  Eigen::MatrixXcd entries;
  double k = 0.0;

  double unitarity_error() const;  // ||S S^H - I||_F
  double symmetry_error() const;   // ||S - S^T||_F
};

/// Raised when the interior operator v^2 L0 - Dtilde + k^2 I is singular
/// and the requested computation needs its inverse.
class GraphResonanceError : public std::runtime_error {
 public:
  GraphResonanceError(double k, int null_dim);
  double k() const { return k_; }
  int null_dimension() const { return null_dim_; }

 private:
  double k_;
  int null_dim_;
};

/// Per-node phase advance alpha(k) = 2 asin(k/2) of a propagating chain
/// solution, in [0, pi]. Throws std::domain_error outside [0, 2].
double dispersion_alpha(double k);

/// Assembled (n+l) x (n+l) block system for given incident amplitudes:
///   [ v^2 L0 - W W^T + k^2 I    W          ] [phi]   [ -W a        ]
///   [ W^T                      -e^{-ia} I  ] [ b ] = [ e^{+ia} a   ]
struct BlockSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

BlockSystem assemble_block_system(const ScatteringProblem& p, double k,
                                  const Eigen::VectorXcd& incident);

/// Direct LU solve of the block system at k in (0, 2). If the block matrix
/// is numerically singular (condition estimate above 1e12) the point is
/// flagged resonant and resolved with the Dirichlet rule: interior values
/// zero, b = -a.
SpectralSolution solve_point(const ScatteringProblem& p, double k,
                             const Eigen::VectorXcd& incident);

/// S(k) = -(I e^{-ia} - W^T F^{-1} W)^{-1} (I e^{+ia} - W^T F^{-1} W)
/// with F = -(v^2 L0 - Dtilde + k^2 I). Throws GraphResonanceError when F
/// is singular; solve_point remains usable at such points.
SMatrix s_matrix(const ScatteringProblem& p, double k);

struct ResonanceCheck {
  bool resonant = false;
  Eigen::MatrixXd null_basis;  // n x null_dim, empty when not resonant
};

/// True iff the smallest singular value of v^2 L0 - Dtilde + k^2 I falls
/// below 1e-10 times its largest singular value.
ResonanceCheck is_graph_resonance(const ScatteringProblem& p, double k);

/// True iff k^2 / v^2 matches an eigenvalue of D0 - A0; such k = v sqrt(l)
/// are the candidate total-reflection wavenumbers.
bool neumann_bound_state_check(const ScatteringProblem& p, double k,
                               double tolerance = 1e-9);

}  // namespace gscat

#endif  // GSCAT_SCATTERING_HPP
