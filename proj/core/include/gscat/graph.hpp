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

#ifndef GSCAT_GRAPH_HPP
#define GSCAT_GRAPH_HPP

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace gscat {

/// Simple undirected graph on vertices 1..n. No self-loops, no multi-edges.
/// All vertex indices in the public API are 1-based; instances are immutable
/// after construction and safe for concurrent reads.
class Graph {
 public:
  /// Edges are unordered pairs; each pair is normalized to (min,max).
  /// Throws std::invalid_argument on self-loops, duplicates, or
  /// out-of-range indices.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int order() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int vertex) const;
  bool adjacent(int u, int v) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> degree_;  // 0-based
};

/// Ordered list of lead attachment vertices; lead l (1-based) attaches at
/// attachments()[l-1]. At most one lead per vertex.
class LeadConfig {
 public:
  explicit LeadConfig(std::vector<int> attachments);

  int count() const { return static_cast<int>(attachments_.size()); }
  const std::vector<int>& attachments() const { return attachments_; }
  int attachment(int lead) const { return attachments_.at(lead - 1); }

  /// Throws std::invalid_argument if any attachment exceeds g.order().
  void validate_for(const Graph& g) const;

 private:
  std::vector<int> attachments_;
};

/// Full spectrum of the positive Laplacian D0 - A0, eigenvalues ascending
/// with orthonormal eigenvectors in matching columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Interior graph Laplacian L0 = A0 - D0 (diagonal entry i is -deg(i),
/// row sums zero).
Eigen::MatrixXd laplacian(const Graph& g);

/// n x l zero/one lead matrix W with W(i,l) = 1 iff lead l attaches at
/// vertex i. Satisfies W W^T = Dtilde (lead-vertex indicator) and
/// W^T W = I exactly in integer arithmetic.
Eigen::MatrixXd lead_matrix(const Graph& g, const LeadConfig& leads);

/// Eigenpairs of D0 - A0. The smallest eigenvalue is always 0.
EigenDecomposition eigenpairs(const Graph& g);

}  // namespace gscat

#endif  // GSCAT_GRAPH_HPP
