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

#include "gscat/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace gscat {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("graph: vertex count must be positive, got " +
                                std::to_string(n));
  }
  degree_.assign(n, 0);
  std::set<std::pair<int, int>> seen;
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) {
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(u));
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      throw std::invalid_argument("graph: edge [" + std::to_string(u) + "," +
                                  std::to_string(v) + "] out of range 1.." +
                                  std::to_string(n));
    }
    auto e = std::minmax(u, v);
    if (!seen.insert(e).second) {
      throw std::invalid_argument("graph: duplicate edge [" +
                                  std::to_string(e.first) + "," +
                                  std::to_string(e.second) + "]");
    }
    edges_.emplace_back(e.first, e.second);
    ++degree_[e.first - 1];
    ++degree_[e.second - 1];
  }
}

int Graph::degree(int vertex) const {
  if (vertex < 1 || vertex > n_) {
    throw std::invalid_argument("graph: vertex " + std::to_string(vertex) +
                                " out of range");
  }
  return degree_[vertex - 1];
}

bool Graph::adjacent(int u, int v) const {
  auto e = std::minmax(u, v);
  return std::find(edges_.begin(), edges_.end(),
                   std::pair<int, int>(e.first, e.second)) != edges_.end();
}

LeadConfig::LeadConfig(std::vector<int> attachments)
    : attachments_(std::move(attachments)) {
  if (attachments_.empty()) {
    throw std::invalid_argument("leads: at least one lead required");
  }
  std::set<int> seen;
  for (int v : attachments_) {
    if (v < 1) {
      throw std::invalid_argument("leads: attachment vertex " +
                                  std::to_string(v) + " out of range");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("leads: duplicate attachment vertex " +
                                  std::to_string(v));
    }
  }
}

void LeadConfig::validate_for(const Graph& g) const {
  for (int v : attachments_) {
    if (v > g.order()) {
      throw std::invalid_argument("leads: attachment vertex " +
                                  std::to_string(v) + " exceeds graph order " +
                                  std::to_string(g.order()));
    }
  }
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const int n = g.order();
  Eigen::MatrixXd l0 = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    l0(u - 1, v - 1) = 1.0;
    l0(v - 1, u - 1) = 1.0;
    l0(u - 1, u - 1) -= 1.0;
    l0(v - 1, v - 1) -= 1.0;
  }
  return l0;
}

Eigen::MatrixXd lead_matrix(const Graph& g, const LeadConfig& leads) {
  leads.validate_for(g);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.order(), leads.count());
  for (int l = 0; l < leads.count(); ++l) {
    w(leads.attachments()[l] - 1, l) = 1.0;
  }
  return w;
}

EigenDecomposition eigenpairs(const Graph& g) {
  Eigen::MatrixXd positive = -laplacian(g);  // D0 - A0
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(positive);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenpairs: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace gscat
