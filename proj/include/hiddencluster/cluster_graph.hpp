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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hiddencluster/gate_decomp.hpp"
#include "hiddencluster/ssd.hpp"

namespace hiddencluster {

using Complex = std::complex<double>;

/// Logical-qubit amplitudes (c0, c1).
struct QubitAmplitudes {
  Complex c0{1.0, 0.0};
  Complex c1{0.0, 0.0};

  static QubitAmplitudes plus();
  /// Rescales to unit norm; throws DomainError on the zero vector.
  QubitAmplitudes normalized() const;
  double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }
  QubitAmplitudes hadamard() const;

  friend bool operator==(const QubitAmplitudes &, const QubitAmplitudes &) = default;
};

/// |<a|b>|^2 for unit vectors.
double overlap_fidelity(const QubitAmplitudes &a, const QubitAmplitudes &b);

/// Original CV resource at a mode.
enum class CvType { Momentum, GkpPlus, GkpLabeled };

std::string_view to_string(CvType type);
CvType parse_cv_type(std::string_view text);

/// Per-mode input to build_cluster.
struct NodeSpec {
  CvType type = CvType::Momentum;
  std::string label;          // GkpLabeled only
  QubitAmplitudes amplitudes;  // GkpLabeled only; normalized on build

  static NodeSpec momentum() { return {}; }
  static NodeSpec gkp_plus() { return {CvType::GkpPlus, {}, QubitAmplitudes::plus()}; }
  static NodeSpec gkp(std::string label, QubitAmplitudes amps) {
    return {CvType::GkpLabeled, std::move(label), amps};
  }
};

// Node states, one alternative per legend symbol.
struct LogicalPlus {  // filled diamond
  friend bool operator==(const LogicalPlus &, const LogicalPlus &) = default;
};
struct LogicalLabeled {  // psi diamond
  std::string label;
  QubitAmplitudes amplitudes;
  friend bool operator==(const LogicalLabeled &, const LogicalLabeled &) = default;
};
struct UniformBin {  // filled square
  friend bool operator==(const UniformBin &, const UniformBin &) = default;
};
struct UniformModular {  // filled circle
  friend bool operator==(const UniformModular &, const UniformModular &) = default;
};
struct ModularZero {  // open circle, |u = 0>
  friend bool operator==(const ModularZero &, const ModularZero &) = default;
};

using NodeState = std::variant<LogicalPlus, LogicalLabeled, UniformBin, UniformModular, ModularZero>;

std::string_view state_name(const NodeState &state);
/// Open circle is the only unfilled symbol.
bool is_filled(const NodeState &state);

using NodeKind = OperatorKind;

struct Node {
  int id = 0;
  std::size_t mode = 0;
  NodeKind kind = NodeKind::Logical;
  NodeState state;

  friend bool operator==(const Node &, const Node &) = default;
};

/// Undirected; stored with a < b. Each multiplicity unit is a gate of strength
/// pi under the normalization diamond <-> ell, square <-> m, circle <-> u/alpha.
struct SubsystemEdge {
  int a = 0;
  int b = 0;
  int multiplicity = 1;

  friend bool operator==(const SubsystemEdge &, const SubsystemEdge &) = default;
  friend auto operator<=>(const SubsystemEdge &, const SubsystemEdge &) = default;
};

struct ModeRecord {
  std::size_t index = 0;
  CvType cv_type = CvType::Momentum;
  std::array<int, 3> nodes{};  // ids of (logical, gauge_m, gauge_u)

  int node(NodeKind kind) const { return nodes[static_cast<std::size_t>(kind)]; }

  friend bool operator==(const ModeRecord &, const ModeRecord &) = default;
};

/// Typed subsystem graph: three nodes per mode, node id = 3 * mode + kind.
/// Values are immutable once built; transforms return new graphs.
class SubsystemGraph {
 public:
  explicit SubsystemGraph(BinSize alpha) : alpha_(alpha) {}
  /// Assembles and validates; throws DomainError on any invariant violation.
  SubsystemGraph(BinSize alpha, std::vector<ModeRecord> modes, std::vector<Node> nodes,
                 std::vector<SubsystemEdge> edges);

  BinSize alpha() const noexcept { return alpha_; }
  std::size_t mode_count() const noexcept { return modes_.size(); }
  const std::vector<ModeRecord> &modes() const noexcept { return modes_; }
  const std::vector<Node> &nodes() const noexcept { return nodes_; }
  const std::vector<SubsystemEdge> &edges() const noexcept { return edges_; }

  const ModeRecord &mode(std::size_t index) const;
  const Node &node(int id) const;
  const Node &node(std::size_t mode, NodeKind kind) const { return node(this->mode(mode).node(kind)); }
  std::vector<SubsystemEdge> incident_edges(int id) const;
  std::size_t edge_count_with_multiplicity() const;

  /// Re-checks every invariant; throws DomainError with the first violation.
  void validate() const;

  friend bool operator==(const SubsystemGraph &, const SubsystemGraph &) = default;

 private:
  BinSize alpha_;
  std::vector<ModeRecord> modes_;
  std::vector<Node> nodes_;
  std::vector<SubsystemEdge> edges_;
};

/// Node states for one CV resource: (logical, gauge_m, gauge_u).
std::array<NodeState, 3> subsystem_states(const NodeSpec &spec);

/// Builds the subsystem graph of C_Z[(pi / alpha^2) A] applied to the given
/// product of resource states.
SubsystemGraph build_cluster(const AdjacencyMatrix &adjacency, const std::vector<NodeSpec> &nodes,
                             BinSize alpha);

/// Deletes every edge incident to an open-circle node: exp(i c u) on |u = 0>
/// is the identity. Shared by the builder and the measurement rewrite.
std::vector<SubsystemEdge> absorb_modular_zero(const std::vector<Node> &nodes,
                                               std::vector<SubsystemEdge> edges);

/// Binary adjacency induced by ell-ell edges.
AdjacencyMatrix logical_subgraph(const SubsystemGraph &graph);

/// Recovers the NodeSpec of each mode from the node states.
std::vector<NodeSpec> node_specs(const SubsystemGraph &graph);

/// Structural equality with a tolerance on logical amplitudes.
bool structurally_equal(const SubsystemGraph &a, const SubsystemGraph &b, double tol = 1e-12);

/// Deterministic Graphviz text; render only (drops coefficients).
std::string render_dot(const SubsystemGraph &graph);

/// Canonical lossless JSON document.
std::string to_json(const SubsystemGraph &graph);
/// Throws ParseError with a byte offset or JSON pointer on malformed input.
SubsystemGraph from_json(std::string_view text);

}  // namespace hiddencluster
