// Copyright 2026 The hiddencluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "hiddencluster/error.hpp"
#include "hiddencluster/measurement.hpp"
#include "hiddencluster/verify.hpp"

namespace hiddencluster::cli {

namespace {

using nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const char *begin = s.data();
  const char *end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || begin == end) return std::nullopt;
  return v;
}

std::size_t to_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string(what), "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

ordered_json amplitudes_json(const QubitAmplitudes &a) {
  return ordered_json::array({ordered_json::array({a.c0.real(), a.c0.imag()}),
                              ordered_json::array({a.c1.real(), a.c1.imag()})});
}

std::string log_line(std::size_t step, const MeasurementRecord &record, const LogicalFrame &frame) {
  ordered_json j;
  j["step"] = step;
  j["measured_mode"] = record.measured_mode;
  j["outcome"] = static_cast<int>(record.outcome);
  j["hadamard_count"] = frame.hadamard_count;
  j["label"] = amplitudes_json(frame.current_label);
  return j.dump() + "\n";
}

ordered_json term_json(const CouplingTerm &t) {
  ordered_json j;
  j["a"] = {{"mode", t.a.mode}, {"kind", std::string(to_string(t.a.kind))}};
  j["b"] = {{"mode", t.b.mode}, {"kind", std::string(to_string(t.b.kind))}};
  j["coefficient"] = t.coefficient;
  j["coefficient_over_pi"] = t.coefficient / std::numbers::pi;
  return j;
}

struct Options {
  std::string topology = "chain:2";
  std::string nodes = "p";
  std::string alpha = "sqrt_pi";
  std::string in;
  std::string out;
  std::string log;
  std::size_t mode = 0;
  std::optional<std::size_t> steps;
  double g_scale = 1.0;
  int n = 3;
  std::size_t modes = 3;
  std::uint64_t seed = 0;
};

int cmd_build(const Options &o, std::ostream &out) {
  const BinSize alpha = parse_alpha(o.alpha);
  const AdjacencyMatrix a = parse_topology(o.topology);
  const auto specs = parse_nodes(o.nodes, a.size());
  write_output(o.out, to_json(build_cluster(a, specs, alpha)), out);
  return kExitOk;
}

int cmd_decompose(const Options &o, std::ostream &out) {
  const BinSize alpha = parse_alpha(o.alpha);
  const AdjacencyMatrix a = parse_topology(o.topology);
  if (!std::isfinite(o.g_scale)) throw DomainError("g-scale must be finite");
  const double g = o.g_scale * std::numbers::pi / (alpha.value() * alpha.value());
  ordered_json doc;
  doc["alpha"] = alpha.value();
  doc["g"] = g;
  doc["modes"] = a.size();
  ordered_json terms = ordered_json::array();
  if (o.g_scale == 1.0 && a.is_binary()) {
    const MultimodeDecomposition d = decompose_cz_multimode(a, alpha);
    for (const auto &t : d.all()) terms.push_back(term_json(t));
    doc["families"] = {{"logical", d.logical_terms.size()},
                       {"gauge", d.gauge_terms.size()},
                       {"interaction", d.interaction_terms.size()}};
  } else {
    for (const auto &t : decompose_cz_general(a.scaled(g), alpha)) terms.push_back(term_json(t));
  }
  doc["terms"] = std::move(terms);
  const ExpandedAdjacency v = expand_adjacency(a.scaled(g), alpha);
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < v.entries.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < v.entries.cols(); ++c) row.push_back(v.entries(r, c));
    rows.push_back(std::move(row));
  }
  doc["expanded_adjacency"] = std::move(rows);
  write_output(o.out, doc.dump(2) + "\n", out);
  return kExitOk;
}

SubsystemGraph load_graph(const std::string &path) {
  if (path.empty()) throw ParseError("--in", "an input graph file is required");
  return from_json(read_file(path));
}

int cmd_measure(const Options &o, std::ostream &out) {
  const SubsystemGraph graph = load_graph(o.in);
  graph.mode(o.mode);  // range check before the type checks
  const Node &logical = graph.node(o.mode, NodeKind::Logical);
  LogicalFrame frame;
  if (const auto *labeled = std::get_if<LogicalLabeled>(&logical.state)) frame.current_label = labeled->amplitudes;
  const MeasurementResult result = measure_p0(graph, o.mode, frame);
  std::string log = log_line(1, result.record, result.frame);
  write_output(o.out, to_json(result.graph), out);
  if (!o.log.empty()) write_output(o.log, log, out);
  return kExitOk;
}

int cmd_run_wire(const Options &o, std::ostream &out) {
  const SubsystemGraph graph = load_graph(o.in);
  const std::size_t steps = o.steps.value_or(graph.mode_count() == 0 ? 0 : graph.mode_count() - 1);
  std::string log;
  SubsystemGraph final_graph = graph;
  if (steps > 0) {
    const WireRun run = run_wire(graph, steps);
    // Replay the frames so every log line carries the label after its own step.
    LogicalFrame frame{0, {}};
    QubitAmplitudes label = QubitAmplitudes::plus();
    const Node &first = graph.node(run.records.front().measured_mode, NodeKind::Logical);
    if (const auto *labeled = std::get_if<LogicalLabeled>(&first.state)) label = labeled->amplitudes;
    for (std::size_t k = 0; k < run.records.size(); ++k) {
      label = label.hadamard();
      frame = LogicalFrame{static_cast<int>(k + 1), label};
      log += log_line(k + 1, run.records[k], frame);
    }
    final_graph = run.graph;
  }
  write_output(o.out, to_json(final_graph), out);
  if (!o.log.empty()) write_output(o.log, log, out);
  return kExitOk;
}

int cmd_verify(Options o, std::ostream &out, std::ostream &err) {
  if (const char *env = std::getenv("HIDDENCLUSTER_SEED"); env != nullptr && *env != '\0') {
    o.seed = to_size(env, "HIDDENCLUSTER_SEED");
  }
  verify::VerifyConfig config;
  config.n = o.n;
  config.n_modes = o.modes;
  config.alpha = parse_alpha(o.alpha).value();
  config.g_scale = o.g_scale;
  config.seed = o.seed;
  const verify::VerifyReport report = verify::run_verification(config);
  write_output(o.out, verify::report_to_json(report, config), out);
  if (!report.passed()) {
    for (const auto &c : report.checks) {
      if (!c.passed) err << "FAILED " << c.name << " (max deviation " << c.max_deviation << ")\n";
    }
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_render(const Options &o, std::ostream &out) {
  write_output(o.out, render_dot(load_graph(o.in)), out);
  return kExitOk;
}

}  // namespace

BinSize parse_alpha(std::string_view text) {
  const std::string t = trim(text);
  if (t == "sqrt_pi") return BinSize::sqrt_pi();
  const auto v = to_double(t);
  if (!v || !std::isfinite(*v) || *v <= 0.0) {
    throw ParseError("--alpha", "expected 'sqrt_pi' or a positive decimal, got '" + t + "'");
  }
  return BinSize(*v);
}

AdjacencyMatrix parse_edge_list(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t max_index = 0;
  bool any = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string f; fields >> f;) tok.push_back(f);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(where, "expected 'i j' or 'modes N'");
    if (tok[0] == "modes") {
      declared = to_size(tok[1], where);
      continue;
    }
    const std::size_t i = to_size(tok[0], where);
    const std::size_t j = to_size(tok[1], where);
    if (i == j) throw ParseError(where, "self-loops are not allowed");
    edges.emplace_back(i, j);
    max_index = std::max({max_index, i, j});
    any = true;
  }
  const std::size_t n = declared.value_or(any ? max_index + 1 : 0);
  if (any && max_index >= n) throw ParseError("edge list", "edge index exceeds the declared mode count");
  AdjacencyMatrix a(n);
  for (const auto &[i, j] : edges) a.set(i, j, 1.0);
  return a;
}

AdjacencyMatrix parse_topology(std::string_view text) {
  const std::string t = trim(text);
  if (t.rfind("chain:", 0) == 0) return AdjacencyMatrix::chain(to_size(t.substr(6), "--topology"));
  if (t.rfind("grid:", 0) == 0) {
    const std::string dims = t.substr(5);
    const auto x = dims.find('x');
    if (x == std::string::npos) throw ParseError("--topology", "grid topology must be grid:RxC");
    return AdjacencyMatrix::grid(to_size(dims.substr(0, x), "--topology"), to_size(dims.substr(x + 1), "--topology"));
  }
  if (t.empty()) throw ParseError("--topology", "empty topology");
  if (t.find(':') != std::string::npos && !std::filesystem::exists(t)) {
    throw ParseError("--topology", "unknown topology '" + t + "' (expected chain:N, grid:RxC or a file)");
  }
  return parse_edge_list(read_file(t));
}

std::complex<double> parse_complex(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("--nodes", "empty amplitude");
  const char last = t.back();
  if (last != 'i' && last != 'j') {
    if (auto v = to_double(t)) return {*v, 0.0};
    throw ParseError("--nodes", "bad amplitude '" + t + "'");
  }
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not the leading sign or part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  std::optional<double> re = 0.0;
  std::string im_text = body;
  if (split_at != std::string::npos) {
    re = to_double(body.substr(0, split_at));
    im_text = body.substr(split_at);
  }
  if (im_text.empty() || im_text == "+" || im_text == "-") im_text += "1";
  const auto im = to_double(im_text);
  if (!re || !im) throw ParseError("--nodes", "bad amplitude '" + t + "'");
  return {*re, *im};
}

std::vector<NodeSpec> parse_nodes(std::string_view text, std::size_t n_modes) {
  const std::vector<std::string> tokens = split(text, ',');
  std::vector<NodeSpec> specs;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const std::string &tok = tokens[k];
    if (tok == "p") {
      specs.push_back(NodeSpec::momentum());
      continue;
    }
    if (tok == "gkp+") {
      specs.push_back(NodeSpec::gkp_plus());
      continue;
    }
    if (tok.rfind("gkp:", 0) != 0) throw ParseError("--nodes", "unknown node type '" + tok + "'");
    const std::string arg = tok.substr(4);
    const bool next_is_number = k + 1 < tokens.size() && tokens[k + 1] != "p" && tokens[k + 1].rfind("gkp", 0) != 0;
    if (next_is_number) {
      const std::complex<double> c0 = parse_complex(arg);
      const std::complex<double> c1 = parse_complex(tokens[k + 1]);
      const QubitAmplitudes amps{c0, c1};
      if (amps.norm() == 0.0) throw ParseError("--nodes", "zero amplitude vector");
      specs.push_back(NodeSpec::gkp(arg + "," + tokens[k + 1], amps.normalized()));
      ++k;
      continue;
    }
    if (arg == "+") {
      specs.push_back(NodeSpec::gkp("+", {r, r}));
    } else if (arg == "-") {
      specs.push_back(NodeSpec::gkp("-", {r, -r}));
    } else if (arg == "0") {
      specs.push_back(NodeSpec::gkp("0", {1.0, 0.0}));
    } else if (arg == "1") {
      specs.push_back(NodeSpec::gkp("1", {0.0, 1.0}));
    } else {
      throw ParseError("--nodes", "gkp label must be +, -, 0, 1 or c0,c1; got '" + arg + "'");
    }
  }
  if (specs.size() == 1 && n_modes != 1) specs.assign(n_modes, specs.front());
  if (specs.size() != n_modes) {
    throw ParseError("--nodes", std::to_string(specs.size()) + " node types for " + std::to_string(n_modes) +
                                    " modes");
  }
  return specs;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Hidden-cluster subsystem graphs for CV and GKP cluster states", "hiddencluster"};
  app.require_subcommand(1);
  Options o;

  auto *build = app.add_subcommand("build", "Build the subsystem graph of a cluster state");
  build->add_option("--topology", o.topology, "chain:N, grid:RxC or an edge-list file")->required();
  build->add_option("--nodes", o.nodes, "p | gkp+ | gkp:<label> | gkp:c0,c1, comma separated")->required();
  build->add_option("--alpha", o.alpha, "bin size (decimal or sqrt_pi)");
  build->add_option("--out", o.out, "output JSON (default stdout)");

  auto *decompose = app.add_subcommand("decompose", "List the subsystem coupling terms of CZ[g A]");
  decompose->add_option("--topology", o.topology, "chain:N, grid:RxC or an edge-list file");
  decompose->add_option("--alpha", o.alpha, "bin size (decimal or sqrt_pi)");
  decompose->add_option("--g-scale", o.g_scale, "weight in units of pi/alpha^2");
  decompose->add_option("--out", o.out, "output JSON (default stdout)");

  auto *measure = app.add_subcommand("measure", "Project one GKP mode onto p = 0");
  measure->add_option("--in", o.in, "input graph JSON")->required();
  measure->add_option("--mode", o.mode, "mode to measure")->required();
  measure->add_option("--out", o.out, "output graph JSON (default stdout)");
  measure->add_option("--log", o.log, "JSON-lines measurement log");

  auto *wire = app.add_subcommand("run-wire", "Teleport along a linear wire");
  wire->add_option("--in", o.in, "input graph JSON")->required();
  wire->add_option("--steps", o.steps, "number of measurements (default N-1)");
  wire->add_option("--out", o.out, "output graph JSON (default stdout)");
  wire->add_option("--log", o.log, "JSON-lines measurement log");

  auto *verify = app.add_subcommand("verify", "Check the decompositions against the dense oracle");
  verify->add_option("--n", o.n, "oracle grid size (1..4)");
  verify->add_option("--modes", o.modes, "largest chain length (2..3)");
  verify->add_option("--alpha", o.alpha, "bin size (decimal or sqrt_pi)");
  verify->add_option("--g-scale", o.g_scale, "CZ weight in units of pi/alpha^2");
  verify->add_option("--seed", o.seed, "seed for the randomized checks");
  verify->add_option("--out", o.out, "report JSON (default stdout)");

  auto *render = app.add_subcommand("render", "Render a graph JSON file as DOT");
  render->add_option("--in", o.in, "input graph JSON")->required();
  render->add_option("--out", o.out, "output DOT (default stdout)");

  std::vector<const char *> argv;
  argv.reserve(args.size());
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*measure) return cmd_measure(o, out);
    if (*wire) return cmd_run_wire(o, out);
    if (*verify) return cmd_verify(o, out, err);
    if (*render) return cmd_render(o, out);
  } catch (const ParseError &e) {
    err << "error: " << e.where() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UnsupportedMeasurement &e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const UnsupportedTopology &e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hiddencluster::cli
