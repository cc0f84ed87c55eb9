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

#include <doctest.h>

#include <cmath>
#include <random>

#include "hiddencluster/error.hpp"
#include "hiddencluster/measurement.hpp"
#include "hiddencluster/oracle.hpp"

using namespace hiddencluster;

namespace {

const BinSize kAlpha = BinSize::sqrt_pi();

QubitAmplitudes random_qubit(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> theta(0.1, 1.4);
  std::uniform_real_distribution<double> phi(-3.0, 3.0);
  const double t = theta(rng);
  return {{std::cos(t), 0.0}, std::polar(std::sin(t), phi(rng))};
}

// Explicit 2x2 Hadamard, independent of QubitAmplitudes::hadamard.
QubitAmplitudes apply_h(const QubitAmplitudes &a, int times) {
  QubitAmplitudes out = a;
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < times; ++k) out = {r * (out.c0 + out.c1), r * (out.c0 - out.c1)};
  return out;
}

double label_distance(const QubitAmplitudes &a, const QubitAmplitudes &b) {
  return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

std::vector<NodeSpec> wire_nodes(std::size_t n, const NodeSpec &input) {
  std::vector<NodeSpec> nodes(n, NodeSpec::momentum());
  nodes.back() = input;
  return nodes;
}

// Graph with every logical label replaced, for input-independence checks.
SubsystemGraph strip_labels(const SubsystemGraph &g) {
  std::vector<Node> nodes = g.nodes();
  for (Node &n : nodes) {
    if (std::holds_alternative<LogicalLabeled>(n.state)) n.state = LogicalLabeled{"x", QubitAmplitudes{}};
  }
  return SubsystemGraph(g.alpha(), g.modes(), nodes, g.edges());
}

}  // namespace

TEST_CASE("p0 projector factorization") {
  const P0Factorization f = factorize_p0_projector();
  CHECK(f.logical_basis == "X");
  CHECK(f.logical_outcome == 1);
  CHECK(f.gauge_quadrature == "p");
  CHECK(f.gauge_value == 0.0);
  CHECK(factorize_p0_projector() == f);
}

TEST_CASE("p0 bra is the product of the logical and gauge bras on the grid") {
  const oracle::GridSpec grid(2, kAlpha);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(grid.mode_dim());
  for (auto &a : amps) a = {normal(rng), normal(rng)};
  const oracle::DiscretizedState state(grid, 1, amps);
  const Complex projected = oracle::project_p0(state, 0).state[0];
  // <+|_L (x) <0|_{p,G}: 1/sqrt(2) on each ell, 1/n on each (m, u).
  Complex factored{0.0, 0.0};
  for (int ell = 0; ell < 2; ++ell)
    for (int m = 0; m < 2; ++m)
      for (int u = 0; u < 2; ++u) factored += amps[grid.local_index(ell, m, u)] / std::sqrt(2.0) / 2.0;
  CHECK(std::abs(projected - factored) < 1e-14);
}

TEST_CASE("measuring the terminal mode of a five-mode wire") {
  const QubitAmplitudes psi{{0.6, 0.0}, {0.0, 0.8}};
  const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(5), wire_nodes(5, NodeSpec::gkp("psi", psi)), kAlpha);
  const MeasurementResult r = measure_p0(g, 4, LogicalFrame{0, psi});
  CHECK(r.graph.mode_count() == 4);
  CHECK(r.graph.mode(3).cv_type == CvType::GkpLabeled);
  const Node &u = r.graph.node(3, NodeKind::GaugeModular);
  CHECK(u.state == NodeState{ModularZero{}});
  CHECK(r.graph.incident_edges(u.id).empty());
  const auto &labeled = std::get<LogicalLabeled>(r.graph.node(3, NodeKind::Logical).state);
  CHECK(labeled.label == "Hpsi");
  CHECK(label_distance(labeled.amplitudes, apply_h(psi, 1)) < 1e-12);
  CHECK(r.frame.hadamard_count == 1);
  CHECK(r.record.measured_mode == 4);
  CHECK(r.record.outcome == 0.0);
  CHECK(r.record.removed_nodes == std::vector<int>{12, 13, 14});
  CHECK(r.record.neighbor_mode == 3);
  CHECK(r.record.converted_node == 11);

  std::vector<NodeSpec> residual = wire_nodes(4, NodeSpec::gkp("Hpsi", apply_h(psi, 1)));
  CHECK(structurally_equal(r.graph, build_cluster(AdjacencyMatrix::chain(4), residual, kAlpha)));
}

TEST_CASE("plus input on a two-mode wire teleports to zero") {
  const SubsystemGraph g =
      build_cluster(AdjacencyMatrix::chain(2), wire_nodes(2, NodeSpec::gkp("+", QubitAmplitudes::plus())), kAlpha);
  const MeasurementResult r = measure_p0(g, 1, LogicalFrame{});
  const auto &labeled = std::get<LogicalLabeled>(r.graph.node(0, NodeKind::Logical).state);
  CHECK(labeled.label == "0");
  CHECK(label_distance(labeled.amplitudes, QubitAmplitudes{1.0, 0.0}) < 1e-15);
  CHECK(r.graph.edges().empty());
}

TEST_CASE("two steps on a three-mode wire compose to H^2") {
  const SubsystemGraph g =
      build_cluster(AdjacencyMatrix::chain(3), wire_nodes(3, NodeSpec::gkp("0", {1.0, 0.0})), kAlpha);
  const WireRun run = run_wire(g, 2);
  CHECK(run.frame.hadamard_count == 2);
  CHECK(label_distance(run.frame.current_label, QubitAmplitudes{1.0, 0.0}) < 1e-12);
  CHECK(std::get<LogicalLabeled>(run.graph.node(0, NodeKind::Logical).state).label == "0");
  CHECK(run.records.size() == 2);
  CHECK(run.records[0].measured_mode == 2);
  CHECK(run.records[1].measured_mode == 1);
}

TEST_CASE("run_wire matches the oracle at every step") {
  std::mt19937_64 rng(17);
  const oracle::GridSpec grid(2, kAlpha);
  const QubitAmplitudes psi = random_qubit(rng);
  const std::size_t n = 4;
  const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(n), wire_nodes(n, NodeSpec::gkp("psi", psi)), kAlpha);
  const WireRun run = run_wire(g, 3);
  CHECK(run.frame.hadamard_count == 3);
  CHECK(label_distance(run.frame.current_label, apply_h(psi, 3)) < 1e-12);

  oracle::DiscretizedState state = oracle::apply_cz_matrix(
      oracle::product_state(grid, wire_nodes(n, NodeSpec::gkp("psi", psi))),
      AdjacencyMatrix::chain(n).scaled(M_PI / kAlpha.value() / kAlpha.value()));
  for (std::size_t step = 0; step < 3; ++step) {
    state = oracle::project_p0(state, n - 1 - step).state.normalized();
  }
  const Eigen::MatrixXcd rho = oracle::logical_density(state, {0});
  Eigen::VectorXcd expected(2);
  expected << run.frame.current_label.c0, run.frame.current_label.c1;
  CHECK(oracle::fidelity(expected, rho) >= 1.0 - 1e-10);
}

TEST_CASE("zero steps leave the wire unchanged") {
  const SubsystemGraph g =
      build_cluster(AdjacencyMatrix::chain(3), wire_nodes(3, NodeSpec::gkp_plus()), kAlpha);
  const WireRun run = run_wire(g, 0);
  CHECK(run.graph == g);
  CHECK(run.records.empty());
  CHECK(run.frame.hadamard_count == 0);
}

TEST_CASE("all-GKP wire gives the same logical result as a hybrid wire") {
  const QubitAmplitudes psi{{0.6, 0.0}, {0.8, 0.0}};
  const SubsystemGraph hybrid =
      build_cluster(AdjacencyMatrix::chain(4), wire_nodes(4, NodeSpec::gkp("psi", psi)), kAlpha);
  std::vector<NodeSpec> all(4, NodeSpec::gkp_plus());
  all.back() = NodeSpec::gkp("psi", psi);
  const SubsystemGraph gkp = build_cluster(AdjacencyMatrix::chain(4), all, kAlpha);
  CHECK(logical_subgraph(hybrid) == logical_subgraph(gkp));
  CHECK(hybrid.edges() != gkp.edges());

  const WireRun a = run_wire(hybrid, 3);
  const WireRun b = run_wire(gkp, 3);
  CHECK(a.frame.hadamard_count == b.frame.hadamard_count);
  CHECK(label_distance(a.frame.current_label, b.frame.current_label) < 1e-15);
  CHECK(a.graph == b.graph);
}

TEST_CASE("gauge rewrite is independent of the input label") {
  std::mt19937_64 rng(5);
  const SubsystemGraph ref = measure_p0(
      build_cluster(AdjacencyMatrix::chain(4), wire_nodes(4, NodeSpec::gkp("psi", QubitAmplitudes::plus())), kAlpha), 3,
      LogicalFrame{}).graph;
  for (int k = 0; k < 20; ++k) {
    const QubitAmplitudes psi = random_qubit(rng);
    const SubsystemGraph g =
        build_cluster(AdjacencyMatrix::chain(4), wire_nodes(4, NodeSpec::gkp("psi", psi)), kAlpha);
    const MeasurementResult r = measure_p0(g, 3, LogicalFrame{0, psi});
    CHECK(strip_labels(r.graph) == strip_labels(ref));
  }
}

TEST_CASE("post-measurement graph equals the residual build on random wires") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> sizes(2, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(sizes(rng));
    const QubitAmplitudes psi = random_qubit(rng);
    std::vector<NodeSpec> nodes;
    for (std::size_t i = 0; i + 1 < n; ++i) nodes.push_back(coin(rng) ? NodeSpec::momentum() : NodeSpec::gkp_plus());
    nodes.push_back(NodeSpec::gkp("psi", psi));
    const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(n), nodes, kAlpha);
    const MeasurementResult r = measure_p0(g, n - 1, LogicalFrame{0, psi});
    std::vector<NodeSpec> residual(nodes.begin(), nodes.end() - 1);
    residual.back() = NodeSpec::gkp("Hpsi", apply_h(psi, 1));
    CHECK(structurally_equal(r.graph, build_cluster(AdjacencyMatrix::chain(n - 1), residual, kAlpha)));
  }
}

TEST_CASE("wire input at the low end") {
  std::vector<NodeSpec> nodes(3, NodeSpec::momentum());
  nodes.front() = NodeSpec::gkp("1", {0.0, 1.0});
  const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(3), nodes, kAlpha);
  CHECK(wire_input_end(g) == 0);
  const WireRun run = run_wire(g, 2);
  CHECK(run.graph.mode_count() == 1);
  CHECK(run.records[0].measured_mode == 0);
  CHECK(run.records[1].measured_mode == 0);
  CHECK(std::get<LogicalLabeled>(run.graph.node(0, NodeKind::Logical).state).label == "1");
}

TEST_CASE("measurement errors") {
  const SubsystemGraph cv =
      build_cluster(AdjacencyMatrix::chain(3), std::vector<NodeSpec>(3, NodeSpec::momentum()), kAlpha);
  CHECK_THROWS_AS(measure_p0(cv, 2, LogicalFrame{}), UnsupportedMeasurement);
  CHECK_THROWS_AS(run_wire(cv, 1), UnsupportedMeasurement);

  const SubsystemGraph gkp =
      build_cluster(AdjacencyMatrix::chain(3), std::vector<NodeSpec>(3, NodeSpec::gkp_plus()), kAlpha);
  CHECK_THROWS_AS(measure_p0(gkp, 1, LogicalFrame{}), UnsupportedTopology);
  CHECK_THROWS_AS(run_wire(gkp, 3), DomainError);

  const SubsystemGraph star =
      build_cluster(AdjacencyMatrix::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}), std::vector<NodeSpec>(4, NodeSpec::gkp_plus()), kAlpha);
  CHECK_THROWS_AS(wire_input_end(star), UnsupportedTopology);

  const SubsystemGraph isolated = build_cluster(AdjacencyMatrix(2), {NodeSpec::gkp_plus(), NodeSpec::gkp_plus()}, kAlpha);
  CHECK_THROWS_AS(measure_p0(isolated, 0, LogicalFrame{}), UnsupportedTopology);
}

TEST_CASE("hadamard labels") {
  CHECK(hadamard_label("+") == "0");
  CHECK(hadamard_label("0") == "+");
  CHECK(hadamard_label("-") == "1");
  CHECK(hadamard_label("1") == "-");
  CHECK(hadamard_label("psi") == "Hpsi");
}
