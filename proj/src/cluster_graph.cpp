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

#include "hiddencluster/cluster_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hiddencluster/error.hpp"

namespace hiddencluster {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kMultiplicityTolerance = 1e-9;

int node_id(std::size_t mode, NodeKind kind) {
  return static_cast<int>(3 * mode + static_cast<std::size_t>(kind));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Number of gates of strength pi in exp(i c a (x) b) once circles carry u/alpha.
int normalized_multiplicity(const CouplingTerm &t, BinSize alpha) {
  double weight = t.coefficient / std::numbers::pi;
  if (t.a.kind == OperatorKind::GaugeModular) weight *= alpha.value();
  if (t.b.kind == OperatorKind::GaugeModular) weight *= alpha.value();
  const double rounded = std::round(weight);
  if (std::abs(weight - rounded) > kMultiplicityTolerance * std::max(1.0, std::abs(weight)) ||
      rounded < 1.0) {
    throw DomainError("coupling term does not normalize to a positive integer multiple of pi");
  }
  return static_cast<int>(rounded);
}

}  // namespace

// --- small value types -------------------------------------------------------

QubitAmplitudes QubitAmplitudes::plus() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {Complex{r, 0.0}, Complex{r, 0.0}};
}

QubitAmplitudes QubitAmplitudes::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("logical amplitudes must be finite and not both zero");
  }
  return {c0 / n, c1 / n};
}

QubitAmplitudes QubitAmplitudes::hadamard() const {
  const double r = std::numbers::sqrt2 / 2.0;
  return {r * (c0 + c1), r * (c0 - c1)};
}

double overlap_fidelity(const QubitAmplitudes &a, const QubitAmplitudes &b) {
  return std::norm(std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1);
}

std::string_view to_string(CvType type) {
  switch (type) {
    case CvType::Momentum:
      return "momentum";
    case CvType::GkpPlus:
      return "gkp_plus";
    case CvType::GkpLabeled:
      return "gkp_labeled";
  }
  return "?";
}

CvType parse_cv_type(std::string_view text) {
  if (text == "momentum") return CvType::Momentum;
  if (text == "gkp_plus") return CvType::GkpPlus;
  if (text == "gkp_labeled") return CvType::GkpLabeled;
  throw DomainError("unknown cv_type '" + std::string(text) + "'");
}

std::string_view state_name(const NodeState &state) {
  return std::visit(Overloaded{
                        [](const LogicalPlus &) { return std::string_view("logical_plus"); },
                        [](const LogicalLabeled &) { return std::string_view("logical_labeled"); },
                        [](const UniformBin &) { return std::string_view("uniform_bin"); },
                        [](const UniformModular &) { return std::string_view("uniform_modular"); },
                        [](const ModularZero &) { return std::string_view("modular_zero"); },
                    },
                    state);
}

bool is_filled(const NodeState &state) { return !std::holds_alternative<ModularZero>(state); }

// --- SubsystemGraph ----------------------------------------------------------

SubsystemGraph::SubsystemGraph(BinSize alpha, std::vector<ModeRecord> modes, std::vector<Node> nodes,
                               std::vector<SubsystemEdge> edges)
    : alpha_(alpha), modes_(std::move(modes)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  validate();
}

const ModeRecord &SubsystemGraph::mode(std::size_t index) const {
  if (index >= modes_.size()) {
    throw DomainError("mode " + std::to_string(index) + " out of range");
  }
  return modes_[index];
}

const Node &SubsystemGraph::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw DomainError("node " + std::to_string(id) + " out of range");
  }
  return nodes_[static_cast<std::size_t>(id)];
}

std::vector<SubsystemEdge> SubsystemGraph::incident_edges(int id) const {
  std::vector<SubsystemEdge> out;
  for (const auto &e : edges_) {
    if (e.a == id || e.b == id) out.push_back(e);
  }
  return out;
}

std::size_t SubsystemGraph::edge_count_with_multiplicity() const {
  std::size_t total = 0;
  for (const auto &e : edges_) total += static_cast<std::size_t>(e.multiplicity);
  return total;
}

void SubsystemGraph::validate() const {
  if (nodes_.size() != 3 * modes_.size()) {
    throw DomainError("expected three nodes per mode");
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const ModeRecord &m = modes_[i];
    if (m.index != i) throw DomainError("mode records must be indexed 0..N-1 in order");
    for (std::size_t k = 0; k < 3; ++k) {
      const auto kind = static_cast<NodeKind>(k);
      if (m.nodes[k] != node_id(i, kind)) {
        throw DomainError("mode " + std::to_string(i) + " has non-canonical node ids");
      }
      const Node &n = nodes_[static_cast<std::size_t>(m.nodes[k])];
      if (n.id != m.nodes[k] || n.mode != i || n.kind != kind) {
        throw DomainError("node " + std::to_string(m.nodes[k]) + " disagrees with its mode record");
      }
    }
    const NodeState &logical = nodes_[3 * i].state;
    const NodeState &bin = nodes_[3 * i + 1].state;
    const NodeState &modular = nodes_[3 * i + 2].state;
    if (!std::holds_alternative<UniformBin>(bin)) {
      throw DomainError("gauge_m node of mode " + std::to_string(i) + " must be uniform_bin");
    }
    bool ok = false;
    switch (m.cv_type) {
      case CvType::Momentum:
        ok = std::holds_alternative<LogicalPlus>(logical) &&
             std::holds_alternative<UniformModular>(modular);
        break;
      case CvType::GkpPlus:
        ok = std::holds_alternative<LogicalPlus>(logical) &&
             std::holds_alternative<ModularZero>(modular);
        break;
      case CvType::GkpLabeled:
        ok = std::holds_alternative<LogicalLabeled>(logical) &&
             std::holds_alternative<ModularZero>(modular);
        break;
    }
    if (!ok) {
      throw DomainError("node states of mode " + std::to_string(i) + " do not match cv_type " +
                        std::string(to_string(m.cv_type)));
    }
    if (const auto *labeled = std::get_if<LogicalLabeled>(&logical)) {
      if (std::abs(labeled->amplitudes.norm() - 1.0) > kNormTolerance) {
        throw DomainError("logical amplitudes of mode " + std::to_string(i) + " are not normalized");
      }
    }
  }

  std::set<std::pair<int, int>> seen;
  const int n_nodes = static_cast<int>(nodes_.size());
  for (const auto &e : edges_) {
    if (e.a < 0 || e.b < 0 || e.a >= n_nodes || e.b >= n_nodes) {
      throw DomainError("edge endpoint does not exist");
    }
    if (e.a >= e.b) throw DomainError("edges must be stored with a < b and no self-loops");
    if (e.multiplicity != 1 && e.multiplicity != 2) {
      throw DomainError("edge multiplicity must be 1 or 2");
    }
    if (!seen.emplace(e.a, e.b).second) throw DomainError("duplicate edge");
    const Node &na = nodes_[static_cast<std::size_t>(e.a)];
    const Node &nb = nodes_[static_cast<std::size_t>(e.b)];
    if (na.mode == nb.mode) throw DomainError("edges must join different modes");
    const bool a_int = na.kind != NodeKind::GaugeModular;
    const bool b_int = nb.kind != NodeKind::GaugeModular;
    const bool both_logical = na.kind == NodeKind::Logical && nb.kind == NodeKind::Logical;
    if (a_int && b_int && !both_logical) {
      throw DomainError("ell-m and m-m edges cannot appear in a tuned graph");
    }
    if (std::holds_alternative<ModularZero>(na.state) ||
        std::holds_alternative<ModularZero>(nb.state)) {
      throw DomainError("open-circle node " +
                        std::to_string(std::holds_alternative<ModularZero>(na.state) ? e.a : e.b) +
                        " has an incident edge");
    }
  }
}

// --- building ----------------------------------------------------------------

std::array<NodeState, 3> subsystem_states(const NodeSpec &spec) {
  switch (spec.type) {
    case CvType::Momentum:
      return {LogicalPlus{}, UniformBin{}, UniformModular{}};
    case CvType::GkpPlus:
      return {LogicalPlus{}, UniformBin{}, ModularZero{}};
    case CvType::GkpLabeled:
      return {LogicalLabeled{spec.label, spec.amplitudes.normalized()}, UniformBin{}, ModularZero{}};
  }
  throw DomainError("unknown cv type");
}

std::vector<SubsystemEdge> absorb_modular_zero(const std::vector<Node> &nodes,
                                               std::vector<SubsystemEdge> edges) {
  auto open = [&](int id) {
    return std::holds_alternative<ModularZero>(nodes.at(static_cast<std::size_t>(id)).state);
  };
  std::erase_if(edges, [&](const SubsystemEdge &e) { return open(e.a) || open(e.b); });
  return edges;
}

SubsystemGraph build_cluster(const AdjacencyMatrix &adjacency, const std::vector<NodeSpec> &specs,
                             BinSize alpha) {
  if (adjacency.size() != specs.size()) {
    throw DomainError("adjacency has " + std::to_string(adjacency.size()) + " modes but " +
                      std::to_string(specs.size()) + " node types were given");
  }
  const MultimodeDecomposition terms = decompose_cz_multimode(adjacency, alpha);

  std::vector<ModeRecord> modes;
  std::vector<Node> nodes;
  modes.reserve(specs.size());
  nodes.reserve(3 * specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ModeRecord record{i, specs[i].type, {}};
    auto states = subsystem_states(specs[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto kind = static_cast<NodeKind>(k);
      record.nodes[k] = node_id(i, kind);
      nodes.push_back(Node{record.nodes[k], i, kind, std::move(states[k])});
    }
    modes.push_back(record);
  }

  std::vector<SubsystemEdge> edges;
  for (const CouplingTerm &t : terms.all()) {
    int a = node_id(t.a.mode, t.a.kind);
    int b = node_id(t.b.mode, t.b.kind);
    if (a > b) std::swap(a, b);
    edges.push_back(SubsystemEdge{a, b, normalized_multiplicity(t, alpha)});
  }
  edges = absorb_modular_zero(nodes, std::move(edges));
  return SubsystemGraph(alpha, std::move(modes), std::move(nodes), std::move(edges));
}

AdjacencyMatrix logical_subgraph(const SubsystemGraph &graph) {
  AdjacencyMatrix out(graph.mode_count());
  for (const auto &e : graph.edges()) {
    const Node &a = graph.node(e.a);
    const Node &b = graph.node(e.b);
    if (a.kind == NodeKind::Logical && b.kind == NodeKind::Logical) out.set(a.mode, b.mode, 1.0);
  }
  return out;
}

std::vector<NodeSpec> node_specs(const SubsystemGraph &graph) {
  std::vector<NodeSpec> out;
  out.reserve(graph.mode_count());
  for (const auto &m : graph.modes()) {
    switch (m.cv_type) {
      case CvType::Momentum:
        out.push_back(NodeSpec::momentum());
        break;
      case CvType::GkpPlus:
        out.push_back(NodeSpec::gkp_plus());
        break;
      case CvType::GkpLabeled: {
        const auto &labeled = std::get<LogicalLabeled>(graph.node(m.node(NodeKind::Logical)).state);
        out.push_back(NodeSpec::gkp(labeled.label, labeled.amplitudes));
        break;
      }
    }
  }
  return out;
}

bool structurally_equal(const SubsystemGraph &a, const SubsystemGraph &b, double tol) {
  if (!(a.alpha() == b.alpha()) || a.modes() != b.modes() || a.edges() != b.edges() ||
      a.nodes().size() != b.nodes().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    const Node &na = a.nodes()[i];
    const Node &nb = b.nodes()[i];
    if (na.id != nb.id || na.mode != nb.mode || na.kind != nb.kind ||
        na.state.index() != nb.state.index()) {
      return false;
    }
    if (const auto *la = std::get_if<LogicalLabeled>(&na.state)) {
      const auto &lb = std::get<LogicalLabeled>(nb.state);
      if (la->label != lb.label || std::abs(la->amplitudes.c0 - lb.amplitudes.c0) > tol ||
          std::abs(la->amplitudes.c1 - lb.amplitudes.c1) > tol) {
        return false;
      }
    }
  }
  return true;
}

// --- rendering ---------------------------------------------------------------

namespace {

constexpr const char *kLogicalColor = "#648CE0";
constexpr const char *kGaugeColor = "#BA4242";

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string render_dot(const SubsystemGraph &graph) {
  std::ostringstream os;
  os << "graph subsystem {\n";
  os << "  node [label=\"\", width=0.25, height=0.25, fixedsize=true];\n";
  for (const auto &m : graph.modes()) {
    os << "  subgraph cluster_mode" << m.index << " {\n";
    os << "    style=dotted;\n";
    os << "    label=\"mode " << m.index << " (" << to_string(m.cv_type) << ")\";\n";
    for (int id : m.nodes) {
      const Node &n = graph.node(id);
      const char *shape = n.kind == NodeKind::Logical    ? "diamond"
                          : n.kind == NodeKind::GaugeBin ? "box"
                                                         : "circle";
      const char *color = n.kind == NodeKind::Logical ? kLogicalColor : kGaugeColor;
      os << "    n" << n.id << " [shape=" << shape << ", color=\"" << color << "\"";
      if (is_filled(n.state)) os << ", style=filled, fillcolor=\"" << color << "\"";
      if (const auto *labeled = std::get_if<LogicalLabeled>(&n.state)) {
        os << ", xlabel=\"" << dot_escape(labeled->label) << "\"";
      }
      os << "];\n";
    }
    os << "  }\n";
  }
  for (const auto &e : graph.edges()) {
    for (int k = 0; k < e.multiplicity; ++k) {
      os << "  n" << e.a << " -- n" << e.b << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace hiddencluster
