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

#include "hiddencluster/measurement.hpp"

#include "hiddencluster/error.hpp"

namespace hiddencluster {

P0Factorization factorize_p0_projector() { return P0Factorization{}; }

std::string hadamard_label(const std::string &label) {
  if (label == "+") return "0";
  if (label == "0") return "+";
  if (label == "-") return "1";
  if (label == "1") return "-";
  return "H" + label;
}

namespace {

struct LabelInfo {
  std::string label;
  QubitAmplitudes amplitudes;
};

LabelInfo logical_label(const SubsystemGraph &graph, std::size_t mode) {
  const Node &logical = graph.node(mode, NodeKind::Logical);
  if (const auto *labeled = std::get_if<LogicalLabeled>(&logical.state)) {
    return {labeled->label, labeled->amplitudes};
  }
  return {"+", QubitAmplitudes::plus()};
}

void require_gkp(const SubsystemGraph &graph, std::size_t mode) {
  const ModeRecord &record = graph.mode(mode);
  if (record.cv_type == CvType::Momentum) {
    throw UnsupportedMeasurement("mode " + std::to_string(mode) +
                                 " is a momentum eigenstate; the unzip rule needs a GKP-type "
                                 "measured node (use the oracle instead)");
  }
}

}  // namespace

MeasurementResult measure_p0(const SubsystemGraph &graph, std::size_t mode, const LogicalFrame &frame) {
  require_gkp(graph, mode);
  const std::vector<std::size_t> neighbors = logical_subgraph(graph).neighbors(mode);
  if (neighbors.size() != 1) {
    throw UnsupportedTopology("measured mode " + std::to_string(mode) + " has degree " +
                              std::to_string(neighbors.size()) + "; the unzip rule needs degree 1");
  }
  const std::size_t neighbor = neighbors.front();
  const LabelInfo measured = logical_label(graph, mode);
  const QubitAmplitudes teleported = measured.amplitudes.hadamard();

  auto new_index = [mode](std::size_t i) { return i < mode ? i : i - 1; };
  auto new_id = [&](int old_id) {
    const Node &n = graph.node(old_id);
    return static_cast<int>(3 * new_index(n.mode) + static_cast<std::size_t>(n.kind));
  };

  std::vector<ModeRecord> modes;
  std::vector<Node> nodes;
  for (const ModeRecord &old : graph.modes()) {
    if (old.index == mode) continue;
    ModeRecord record = old;
    record.index = new_index(old.index);
    for (std::size_t k = 0; k < 3; ++k) record.nodes[k] = new_id(old.nodes[k]);
    if (old.index == neighbor) record.cv_type = CvType::GkpLabeled;
    for (std::size_t k = 0; k < 3; ++k) {
      Node n = graph.node(old.nodes[k]);
      n.id = record.nodes[k];
      n.mode = record.index;
      if (old.index == neighbor && n.kind == NodeKind::Logical) {
        n.state = LogicalLabeled{hadamard_label(measured.label), teleported};
      } else if (old.index == neighbor && n.kind == NodeKind::GaugeModular) {
        n.state = ModularZero{};
      }
      nodes.push_back(std::move(n));
    }
    modes.push_back(record);
  }

  std::vector<SubsystemEdge> edges;
  for (const SubsystemEdge &e : graph.edges()) {
    if (graph.node(e.a).mode == mode || graph.node(e.b).mode == mode) continue;
    SubsystemEdge moved{new_id(e.a), new_id(e.b), e.multiplicity};
    if (moved.a > moved.b) std::swap(moved.a, moved.b);
    edges.push_back(moved);
  }
  edges = absorb_modular_zero(nodes, std::move(edges));

  MeasurementRecord record;
  record.measured_mode = mode;
  record.removed_nodes.assign(graph.mode(mode).nodes.begin(), graph.mode(mode).nodes.end());
  record.neighbor_mode = neighbor;
  record.converted_node = graph.mode(neighbor).node(NodeKind::GaugeModular);

  LogicalFrame next{frame.hadamard_count + 1, teleported};
  return MeasurementResult{SubsystemGraph(graph.alpha(), std::move(modes), std::move(nodes), std::move(edges)),
                           next, std::move(record)};
}

std::size_t wire_input_end(const SubsystemGraph &graph) {
  const std::size_t n = graph.mode_count();
  if (n == 0) throw UnsupportedTopology("empty graph is not a wire");
  const AdjacencyMatrix logical = logical_subgraph(graph);
  std::vector<std::size_t> ends;
  if (n == 1) {
    ends.push_back(0);
  } else {
    if (logical.edge_count() != n - 1) throw UnsupportedTopology("graph is not a linear wire");
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t degree = logical.neighbors(i).size();
      if (degree == 0 || degree > 2) throw UnsupportedTopology("graph is not a linear wire");
      if (degree == 1) ends.push_back(i);
    }
    // N-1 edges, all degrees in {1, 2} and exactly two ends means a path.
    if (ends.size() != 2) throw UnsupportedTopology("graph is not a linear wire");
  }
  for (auto it = ends.rbegin(); it != ends.rend(); ++it) {
    if (graph.mode(*it).cv_type != CvType::Momentum) return *it;
  }
  throw UnsupportedMeasurement("neither end of the wire is GKP-type");
}

WireRun run_wire(const SubsystemGraph &graph, std::size_t steps) {
  std::size_t input = wire_input_end(graph);
  if (steps + 1 > graph.mode_count()) {
    throw DomainError("a wire of " + std::to_string(graph.mode_count()) + " modes supports at most " +
                      std::to_string(graph.mode_count() - 1) + " steps");
  }
  WireRun run{graph, LogicalFrame{0, logical_label(graph, input).amplitudes}, {}};
  for (std::size_t step = 0; step < steps; ++step) {
    MeasurementResult result = measure_p0(run.graph, input, run.frame);
    const std::size_t neighbor = result.record.neighbor_mode;
    input = neighbor < input ? neighbor : neighbor - 1;
    run.graph = std::move(result.graph);
    run.frame = result.frame;
    run.records.push_back(std::move(result.record));
  }
  return run;
}

}  // namespace hiddencluster
