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

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "gscat/io.hpp"
#include "gscat/source.hpp"
#include "gscat/spectral.hpp"
#include "gscat/svg.hpp"
#include "gscat/timedomain.hpp"

namespace {

using namespace gscat;

/// "2-9", "2,4,7", or a mix of both.
std::vector<int> parse_vertex_list(const std::string& spec) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);  // allow leading minus to fail later
    if (dash != std::string::npos) {
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = std::stoi(item.substr(dash + 1));
      if (hi < lo) {
        throw std::invalid_argument("empty vertex range: " + item);
      }
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty vertex list: '" + spec + "'");
  }
  return out;
}

/// Numeric literals plus the symbolic forms sqrtN and pi.
double resolve_symbolic(const std::string& token) {
  if (token == "pi") return std::acos(-1.0);
  if (token.rfind("sqrt", 0) == 0) {
    const double arg = std::stod(token.substr(4));
    return std::sqrt(arg);
  }
  return std::stod(token);
}

struct GridFlags {
  int count = 2000;
  double k_min = 1e-3;
  double k_max = 2.0 - 1e-3;
  KGrid grid() const { return KGrid(k_min, k_max, count); }
  void attach(CLI::App* cmd) {
    cmd->add_option("--grid", count, "number of grid nodes")
        ->check(CLI::Range(2, 10000000));
    cmd->add_option("--kmin", k_min, "lower grid bound (in (0,2))");
    cmd->add_option("--kmax", k_max, "upper grid bound (in (0,2))");
  }
};

void plot_sweep(const SweepResult& s, const std::string& path,
                const std::vector<std::string>& tick_tokens) {
  PlotOptions opts;
  opts.y_label = "power";
  opts.title = "outgoing power per lead";
  for (const auto& tok : tick_tokens) {
    opts.marked_ticks.push_back({resolve_symbolic(tok), tok});
  }
  std::vector<PlotSeries> series;
  const int l = s.problem().lead_count();
  for (int lead = 1; lead <= l; ++lead) {
    PlotSeries ps;
    ps.label = (lead == s.input_lead())
                   ? "|b|^2 lead " + std::to_string(lead) + " (reflection)"
                   : "|b|^2 lead " + std::to_string(lead);
    ps.x.reserve(s.grid().count());
    ps.y.reserve(s.grid().count());
    for (int i = 0; i < s.grid().count(); ++i) {
      ps.x.push_back(s.grid().node(i));
      ps.y.push_back(s.outgoing_power()(lead - 1, i));
    }
    series.push_back(std::move(ps));
  }
  emit_plot_svg(series, path, opts);
}

int run(int argc, char** argv) {
  CLI::App app{"scattering of waves on graphs with semi-infinite leads"};
  app.require_subcommand(1);
  std::function<void()> action;

  // ---- eig
  {
    auto* cmd = app.add_subcommand("eig", "interior Laplacian spectrum");
    auto file = std::make_shared<std::string>();
    auto vectors = std::make_shared<bool>(false);
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_flag("--vectors", *vectors, "also print eigenvectors");
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        const auto eig = eigenpairs(gf.graph);
        for (int i = 0; i < eig.values.size(); ++i) {
          std::printf("%s\n", format_double(eig.values(i)).c_str());
        }
        if (*vectors) {
          for (int i = 0; i < eig.vectors.cols(); ++i) {
            std::printf("v%d:", i + 1);
            for (int r = 0; r < eig.vectors.rows(); ++r) {
              std::printf(" % .12g", eig.vectors(r, i));
            }
            std::printf("\n");
          }
        }
      };
    });
  }

  // ---- sweep
  {
    auto* cmd = app.add_subcommand(
        "sweep", "reflection/transmission spectra over a k grid");
    auto file = std::make_shared<std::string>();
    auto lead = std::make_shared<int>(1);
    auto flags = std::make_shared<GridFlags>();
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    auto ticks = std::make_shared<std::vector<std::string>>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--lead", *lead, "input lead index (1-based)");
    flags->attach(cmd);
    cmd->add_option("-o,--output", *out, "sweep CSV path")->required();
    cmd->add_option("--plot", *plot, "also write an SVG plot");
    cmd->add_option("--tick", *ticks,
                    "marked x positions, numeric or sqrtN/pi");
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const auto s = sweep(p, flags->grid(), *lead);
        emit_sweep_csv(s, *out);
        std::printf("wrote %s (%d rows, %d leads)\n", out->c_str(),
                    s.grid().count(), p.lead_count());
        std::printf("max conservation residual: %.3e\n",
                    s.conservation_residual().cwiseAbs().maxCoeff());
        if (!plot->empty()) {
          plot_sweep(s, *plot, *ticks);
          std::printf("wrote %s\n", plot->c_str());
        }
      };
    });
  }

  // ---- smatrix
  {
    auto* cmd = app.add_subcommand(
        "smatrix", "scattering matrix at one wavenumber");
    auto file = std::make_shared<std::string>();
    auto ktok = std::make_shared<std::string>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--k", *ktok, "wavenumber in (0,2), numeric or sqrtN")
        ->required();
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const double k = resolve_symbolic(*ktok);
        const auto s = s_matrix(p, k);
        std::printf("S(k = %.12g), %d leads\n", k, p.lead_count());
        for (int i = 0; i < s.entries.rows(); ++i) {
          for (int j = 0; j < s.entries.cols(); ++j) {
            std::printf("  S[%d][%d] = % .12f %+.12fi  |S|^2 = %.12f\n",
                        i + 1, j + 1, s.entries(i, j).real(),
                        s.entries(i, j).imag(), std::norm(s.entries(i, j)));
          }
        }
        std::printf("unitarity ||S S^H - I|| = %.3e\n", s.unitarity_error());
        std::printf("reciprocity ||S - S^T|| = %.3e\n", s.symmetry_error());
      };
    });
  }

  // ---- transmit
  {
    auto* cmd = app.add_subcommand(
        "transmit", "band-integrated transmission for one exit lead");
    auto file = std::make_shared<std::string>();
    auto input = std::make_shared<int>(1);
    auto exit_lead = std::make_shared<int>();
    auto flags = std::make_shared<GridFlags>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--input", *input, "input lead index");
    cmd->add_option("--exit", *exit_lead, "exit lead index")->required();
    flags->attach(cmd);
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const auto s = sweep(p, flags->grid(), *input);
        std::printf("T = %.6f\n", total_transmission(s, *exit_lead));
      };
    });
  }

  // ---- optimize
  {
    auto* cmd = app.add_subcommand(
        "optimize", "rank candidate exit vertices by total transmission");
    auto file = std::make_shared<std::string>();
    auto input = std::make_shared<int>(1);
    auto cand = std::make_shared<std::string>();
    auto impedance = std::make_shared<double>(0.0);
    auto flags = std::make_shared<GridFlags>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--input", *input, "input vertex (1-based)");
    cmd->add_option("--candidates", *cand, "exit vertices, e.g. 2-9 or 2,4,7")
        ->required();
    cmd->add_option("--impedance", *impedance,
                    "override the file's impedance");
    flags->attach(cmd);
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        const double v = (*impedance > 0.0) ? *impedance : gf.impedance;
        const auto report = rank_exit_vertices(
            gf.graph, *input, parse_vertex_list(*cand), v, flags->grid());
        std::printf("input vertex %d, impedance %g\n", *input, v);
        std::printf("%8s %12s\n", "exit", "T");
        for (const auto& [j, t] : report.entries) {
          std::printf("%8d %12.6f\n", j, t);
        }
      };
    });
  }

  // ---- defect
  {
    auto* cmd = app.add_subcommand(
        "defect", "spectral signature of a localized source");
    auto file = std::make_shared<std::string>();
    auto lead = std::make_shared<int>(1);
    auto vertex = std::make_shared<int>();
    auto kd = std::make_shared<double>(1.0);
    auto wd = std::make_shared<double>(50.0);
    auto amp = std::make_shared<double>(1.0);
    auto flags = std::make_shared<GridFlags>();
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--lead", *lead, "input lead index");
    cmd->add_option("--vertex", *vertex, "source vertex")->required();
    cmd->add_option("--kd", *kd, "source center frequency");
    cmd->add_option("--wd", *wd, "source width (inverse variance)");
    cmd->add_option("--amplitude", *amp, "source amplitude");
    flags->attach(cmd);
    cmd->add_option("-o,--output", *out, "signature CSV path")->required();
    cmd->add_option("--plot", *plot, "also write an SVG plot");
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const SourceSpec spec{*vertex, *amp, *wd, *kd};
        const auto sig = defect_signature(p, flags->grid(), *lead, spec);
        emit_signature_csv(sig, *out);
        std::printf("wrote %s (max |rho| = %.6g)\n", out->c_str(),
                    sig.rho.cwiseAbs().maxCoeff());
        if (!plot->empty()) {
          PlotSeries ps{"rho(k)", {}, {}};
          for (int i = 0; i < sig.grid.count(); ++i) {
            ps.x.push_back(sig.grid.node(i));
            ps.y.push_back(sig.rho(i));
          }
          PlotOptions opts;
          opts.title = "defect signature";
          opts.y_label = "sum|b|^2 - sum|a|^2";
          opts.marked_ticks = {{*kd, "k_d"}};
          emit_plot_svg({ps}, *plot, opts);
          std::printf("wrote %s\n", plot->c_str());
        }
      };
    });
  }

  // ---- locate
  {
    auto* cmd = app.add_subcommand(
        "locate", "rank candidate source vertices against an observation");
    auto file = std::make_shared<std::string>();
    auto observed = std::make_shared<std::string>();
    auto cand = std::make_shared<std::string>();
    auto lead = std::make_shared<int>(1);
    auto kd = std::make_shared<double>(1.0);
    auto wd = std::make_shared<double>(50.0);
    auto amp = std::make_shared<double>(1.0);
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--observed", *observed, "signature CSV to explain")
        ->required();
    cmd->add_option("--candidates", *cand, "candidate vertices")->required();
    cmd->add_option("--lead", *lead, "input lead index");
    cmd->add_option("--kd", *kd, "assumed source center frequency");
    cmd->add_option("--wd", *wd, "assumed source width");
    cmd->add_option("--amplitude", *amp, "assumed source amplitude");
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const auto sig = parse_signature_csv(*observed);
        const SourceSpec tmpl{1, *amp, *wd, *kd};
        const auto ranked =
            localize_source(p, sig, parse_vertex_list(*cand), tmpl, *lead);
        std::printf("%8s %16s\n", "vertex", "misfit");
        for (const auto& e : ranked) {
          std::printf("%8d %16.9e\n", e.vertex, e.misfit);
        }
      };
    });
  }

  // ---- simulate
  {
    auto* cmd = app.add_subcommand(
        "simulate", "time-domain wavepacket cross-check of the spectra");
    auto file = std::make_shared<std::string>();
    auto kc = std::make_shared<double>(1.0);
    auto bw = std::make_shared<double>(0.1);
    auto lead = std::make_shared<int>(1);
    auto lead_length = std::make_shared<int>(2000);
    auto center = std::make_shared<int>(0);
    auto flags = std::make_shared<GridFlags>();
    auto trace = std::make_shared<std::string>();
    cmd->add_option("graph", *file, "graph JSON file")->required();
    cmd->add_option("--kc", *kc, "packet carrier wavenumber");
    cmd->add_option("--bandwidth", *bw, "packet k bandwidth");
    cmd->add_option("--lead", *lead, "input lead index");
    cmd->add_option("--lead-length", *lead_length,
                    "truncated lead length in nodes");
    cmd->add_option("--center", *center,
                    "launch node (default: mid-lead)");
    flags->attach(cmd);
    cmd->add_option("--trace", *trace, "write per-region energy CSV");
    cmd->callback([=, &action]() {
      action = [=]() {
        const auto gf = parse_graph_file(*file);
        ScatteringProblem p(gf.graph, gf.leads, gf.impedance);
        const TruncatedAssembly assembly(p, *lead_length);
        const int j0 = (*center > 0) ? *center : *lead_length / 2;
        const auto packet = PacketSpec::from_bandwidth(*kc, *bw, j0, *lead);
        const auto swept = sweep(p, flags->grid(), *lead);
        const auto cmp = compare_with_spectral(assembly, packet, swept);

        std::printf("packet: k_c = %g, bandwidth = %g, sigma = %.2f nodes, "
                    "launch node %d\n", *kc, *bw, packet.sigma, j0);
        std::printf("transmitted energy ratio (time domain): %.6f\n",
                    cmp.simulated);
        std::printf("bandwidth-weighted spectral average:    %.6f\n",
                    cmp.spectral_prediction);
        std::printf("relative difference: %.4f\n", cmp.relative_error);
        std::printf("reflected ratio: %.6f, interior residual ratio: %.2e\n",
                    cmp.energies.reflected_ratio,
                    cmp.energies.graph_residual / cmp.energies.incident);
        std::printf("discrete energy drift: %.3e\n",
                    cmp.energies.energy_drift);

        if (!trace->empty()) {
          std::string csv = "t,graph";
          for (int i = 1; i <= p.lead_count(); ++i) {
            csv += ",lead_" + std::to_string(i);
          }
          csv += ",total\n";
          for (const auto& row : cmp.energies.trace) {
            csv += format_double(row.t);
            csv += ',';
            csv += format_double(row.graph);
            for (double e : row.leads) {
              csv += ',';
              csv += format_double(e);
            }
            csv += ',';
            csv += format_double(row.total);
            csv += '\n';
          }
          write_file_atomic(*trace, csv);
          std::printf("wrote %s\n", trace->c_str());
        }
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "run with --help for usage\n");
    return 2;
  }

  try {
    action();
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const GraphResonanceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const WindowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
