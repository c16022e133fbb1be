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

#include "gscat/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace gscat {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int line_at_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

/// Line of the element `index` of the top-level array stored under `key`.
/// Returns 0 when it cannot be located (diagnostic stays file-level).
int line_of_array_element(const std::string& text, const std::string& key,
                          int index) {
  const std::string needle = "\"" + key + "\"";
  std::size_t pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  pos = text.find('[', pos);
  if (pos == std::string::npos) return 0;

  int depth = 0;
  int element = -1;
  bool in_element = false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '[' || c == '{') {
      if (depth == 1 && !in_element) {
        in_element = true;
        ++element;
        if (element == index) return line_at_byte(text, i);
      }
      ++depth;
      continue;
    }
    if (c == ']' || c == '}') {
      --depth;
      if (depth == 0) return 0;  // array ended before reaching index
      if (depth == 1) in_element = false;
      continue;
    }
    if (depth == 1) {
      if (c == ',') {
        in_element = false;
      } else if (!std::isspace(static_cast<unsigned char>(c)) &&
                 !in_element) {
        in_element = true;
        ++element;
        if (element == index) return line_at_byte(text, i);
      }
    }
  }
  return 0;
}

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& message) {
  if (line > 0) {
    throw IoError(origin + ":" + std::to_string(line) + ": " + message);
  }
  throw IoError(origin + ": " + message);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  return fields;
}

double parse_strict_double(const std::string& s, const std::string& origin,
                           int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) {
    fail_at(origin, line, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write file: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw IoError("write failed: " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move output into place: " + path + " (" +
                  ec.message() + ")");
  }
}

GraphFile parse_graph_json(const std::string& text,
                           const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at(origin, line_at_byte(text, e.byte), std::string("invalid JSON: ") +
                                                     e.what());
  }
  if (!doc.is_object()) {
    fail_at(origin, 0, "top-level value must be an object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    fail_at(origin, 0, "missing integer field 'n'");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) {
    fail_at(origin, 0, "'n' must be positive");
  }

  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    fail_at(origin, 0, "missing array field 'edges'");
  }
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  int idx = 0;
  for (const auto& e : doc["edges"]) {
    const int line = line_of_array_element(text, "edges", idx);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      fail_at(origin, line, "edge must be a pair of integers");
    }
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    if (u == v) {
      fail_at(origin, line, "self-loop at vertex " + std::to_string(u));
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      fail_at(origin, line,
              "edge [" + std::to_string(u) + "," + std::to_string(v) +
                  "] out of range 1.." + std::to_string(n));
    }
    const auto norm = std::minmax(u, v);
    if (!seen.insert(norm).second) {
      fail_at(origin, line,
              "duplicate edge [" + std::to_string(norm.first) + "," +
                  std::to_string(norm.second) + "]");
    }
    edges.emplace_back(u, v);
    ++idx;
  }

  if (!doc.contains("leads") || !doc["leads"].is_array() ||
      doc["leads"].empty()) {
    fail_at(origin, 0, "missing non-empty array field 'leads'");
  }
  std::vector<int> leads;
  std::set<int> lead_seen;
  idx = 0;
  for (const auto& v : doc["leads"]) {
    const int line = line_of_array_element(text, "leads", idx);
    if (!v.is_number_integer()) {
      fail_at(origin, line, "lead attachment must be an integer vertex");
    }
    const int vertex = v.get<int>();
    if (vertex < 1 || vertex > n) {
      fail_at(origin, line, "lead vertex " + std::to_string(vertex) +
                                " out of range 1.." + std::to_string(n));
    }
    if (!lead_seen.insert(vertex).second) {
      fail_at(origin, line,
              "duplicate lead vertex " + std::to_string(vertex));
    }
    leads.push_back(vertex);
    ++idx;
  }

  double impedance = 1.0;
  if (doc.contains("impedance")) {
    if (!doc["impedance"].is_number()) {
      fail_at(origin, 0, "'impedance' must be a number");
    }
    impedance = doc["impedance"].get<double>();
    if (!(impedance > 0.0)) {
      fail_at(origin, 0, "'impedance' must be positive");
    }
  }

  return GraphFile{Graph(n, std::move(edges)), LeadConfig(std::move(leads)),
                   impedance};
}

GraphFile parse_graph_file(const std::string& path) {
  return parse_graph_json(read_file(path), path);
}

void emit_sweep_csv(const SweepResult& s, const std::string& path) {
  const int npts = s.grid().count();
  const int l = s.problem().lead_count();
  if (npts == 0 || l == 0) {
    throw IoError("sweep CSV: refusing to write an empty sweep");
  }

  std::string out;
  out.reserve(static_cast<std::size_t>(npts) * (4 * l + 3) * 26);
  out += "k,alpha";
  for (int lead = 1; lead <= l; ++lead) {
    const std::string sfx = "_" + std::to_string(lead);
    out += ",a2" + sfx + ",b2" + sfx + ",arg_a" + sfx + ",arg_b" + sfx;
  }
  out += ",conservation_residual\n";

  for (int i = 0; i < npts; ++i) {
    out += format_double(s.grid().node(i));
    out += ',';
    out += format_double(s.alpha(i));
    for (int lead = 0; lead < l; ++lead) {
      out += ',';
      out += format_double(s.incident_power()(lead, i));
      out += ',';
      out += format_double(s.outgoing_power()(lead, i));
      out += ',';
      out += format_double(s.incident_phase()(lead, i));
      out += ',';
      out += format_double(s.outgoing_phase()(lead, i));
    }
    out += ',';
    out += format_double(s.conservation_residual()(i));
    out += '\n';
  }
  write_file_atomic(path, out);
}

SweepTable parse_sweep_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw IoError(path + ": empty CSV");
  }
  const auto columns = split_csv_line(header);
  if (columns.size() < 7 || columns[0] != "k" || columns[1] != "alpha" ||
      columns.back() != "conservation_residual" ||
      (columns.size() - 3) % 4 != 0) {
    throw IoError(path + ": not a sweep CSV (unexpected header)");
  }
  const int l = static_cast<int>((columns.size() - 3) / 4);

  SweepTable table;
  table.a2.resize(l);
  table.b2.resize(l);
  table.arg_a.resize(l);
  table.arg_b.resize(l);

  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != columns.size()) {
      fail_at(path, lineno, "expected " + std::to_string(columns.size()) +
                                " fields, got " +
                                std::to_string(fields.size()));
    }
    int f = 0;
    table.k.push_back(parse_strict_double(fields[f++], path, lineno));
    table.alpha.push_back(parse_strict_double(fields[f++], path, lineno));
    for (int lead = 0; lead < l; ++lead) {
      table.a2[lead].push_back(parse_strict_double(fields[f++], path, lineno));
      table.b2[lead].push_back(parse_strict_double(fields[f++], path, lineno));
      table.arg_a[lead].push_back(
          parse_strict_double(fields[f++], path, lineno));
      table.arg_b[lead].push_back(
          parse_strict_double(fields[f++], path, lineno));
    }
    table.residual.push_back(parse_strict_double(fields[f], path, lineno));
  }
  if (table.k.empty()) {
    throw IoError(path + ": sweep CSV has no data rows");
  }
  return table;
}

void emit_signature_csv(const DefectSignature& sig, const std::string& path) {
  if (sig.rho.size() == 0) {
    throw IoError("signature CSV: refusing to write an empty signature");
  }
  std::string out = "k,rho\n";
  for (int i = 0; i < sig.grid.count(); ++i) {
    out += format_double(sig.grid.node(i));
    out += ',';
    out += format_double(sig.rho(i));
    out += '\n';
  }
  write_file_atomic(path, out);
}

DefectSignature parse_signature_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) !=
                                     std::vector<std::string>{"k", "rho"}) {
    throw IoError(path + ": not a signature CSV (expected header k,rho)");
  }
  std::vector<double> k, rho;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      fail_at(path, lineno, "expected 2 fields");
    }
    k.push_back(parse_strict_double(fields[0], path, lineno));
    rho.push_back(parse_strict_double(fields[1], path, lineno));
  }
  if (k.size() < 2) {
    throw IoError(path + ": signature CSV needs at least 2 rows");
  }
  DefectSignature sig{KGrid(k.front(), k.back(), static_cast<int>(k.size())),
                      Eigen::Map<Eigen::VectorXd>(rho.data(),
                                                  static_cast<long>(rho.size()))};
  return sig;
}

}  // namespace gscat
