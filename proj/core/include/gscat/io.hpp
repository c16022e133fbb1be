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

#ifndef GSCAT_IO_HPP
#define GSCAT_IO_HPP

#include <string>
#include <vector>

#include "gscat/source.hpp"
#include "gscat/spectral.hpp"

namespace gscat {

/// Raised for unreadable, unparsable, or schema-violating input files and
/// for unwritable outputs. Messages carry file:line positions where known.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphFile {
  Graph graph;
  LeadConfig leads;
  double impedance = 1.0;
};

/// Graph document: {"n": int, "edges": [[i,j],...], "leads": [v,...],
/// "impedance": float}. Vertices are 1-based; impedance defaults to 1.
GraphFile parse_graph_file(const std::string& path);
GraphFile parse_graph_json(const std::string& text,
                           const std::string& origin = "<string>");

/// Sweep CSV: header  k,alpha,a2_1,b2_1,arg_a_1,arg_b_1,...,
/// conservation_residual  with one row per grid node, 17 significant
/// digits (lossless double round-trip).
void emit_sweep_csv(const SweepResult& s, const std::string& path);

struct SweepTable {
  std::vector<double> k, alpha;
  std::vector<std::vector<double>> a2, b2, arg_a, arg_b;  // per lead
  std::vector<double> residual;
  int lead_count() const { return static_cast<int>(a2.size()); }
};

SweepTable parse_sweep_csv(const std::string& path);

/// Signature CSV: columns k,rho.
void emit_signature_csv(const DefectSignature& sig, const std::string& path);
DefectSignature parse_signature_csv(const std::string& path);

/// Full-precision formatting used by every CSV writer ("%.17g").
std::string format_double(double value);

/// Whole-file write through a same-directory temp file and rename, so a
/// failed run never leaves partial data behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gscat

#endif  // GSCAT_IO_HPP
