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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/error.hpp"

using namespace hiddencluster;

namespace {

const BinSize kAlpha = BinSize::sqrt_pi();

std::vector<SubsystemEdge> edges_of(std::initializer_list<SubsystemEdge> list) { return list; }

QubitAmplitudes psi() { return QubitAmplitudes{{0.6, 0.0}, {0.0, 0.8}}; }

std::size_t count_lines(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("two-mode CVCS graph") {
  const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::momentum(), NodeSpec::momentum()}, kAlpha);
  CHECK(g.nodes().size() == 6);
  // ids: 3 * mode + (logical, gauge_m, gauge_u)
  CHECK(g.edges() == edges_of({{0, 3, 1}, {0, 5, 1}, {1, 5, 2}, {2, 3, 1}, {2, 4, 2}, {2, 5, 1}}));
  CHECK(g.node(0).state == NodeState{LogicalPlus{}});
  CHECK(g.node(1).state == NodeState{UniformBin{}});
  CHECK(g.node(2).state == NodeState{UniformModular{}});
  CHECK(logical_subgraph(g) == AdjacencyMatrix::chain(2));
}

TEST_CASE("two-mode GKP cluster keeps only the logical edge") {
  const SubsystemGraph g = build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::gkp_plus(), NodeSpec::gkp_plus()}, kAlpha);
  CHECK(g.edges() == edges_of({{0, 3, 1}}));
  CHECK(g.node(2).state == NodeState{ModularZero{}});
  CHECK(g.node(5).state == NodeState{ModularZero{}});
}

TEST_CASE("hybrid momentum-GKP pair is asymmetric") {
  const SubsystemGraph g =
      build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::momentum(), NodeSpec::gkp("psi", psi())}, kAlpha);
  CHECK(g.edges() == edges_of({{0, 3, 1}, {2, 3, 1}, {2, 4, 2}}));
  const auto *labeled = std::get_if<LogicalLabeled>(&g.node(3).state);
  REQUIRE(labeled != nullptr);
  CHECK(labeled->label == "psi");
  CHECK(g.mode(1).cv_type == CvType::GkpLabeled);
}

TEST_CASE("six-mode grid of momentum states") {
  const AdjacencyMatrix grid = AdjacencyMatrix::grid(2, 3);
  const SubsystemGraph g = build_cluster(grid, std::vector<NodeSpec>(6, NodeSpec::momentum()), kAlpha);
  CHECK(g.nodes().size() == 18);
  CHECK(g.edges().size() == 7 * 6);
  CHECK(g.edge_count_with_multiplicity() == 7 * 8);
  CHECK(logical_subgraph(g) == grid);
}

TEST_CASE("six-mode grid of GKP states is the bare qubit grid") {
  const AdjacencyMatrix grid = AdjacencyMatrix::grid(2, 3);
  const SubsystemGraph g = build_cluster(grid, std::vector<NodeSpec>(6, NodeSpec::gkp_plus()), kAlpha);
  CHECK(g.edges().size() == 7);
  for (const auto &e : g.edges()) {
    CHECK(g.node(e.a).kind == NodeKind::Logical);
    CHECK(g.node(e.b).kind == NodeKind::Logical);
  }
}

TEST_CASE("six-mode hybrid grid") {
  const AdjacencyMatrix grid = AdjacencyMatrix::grid(2, 3);
  std::vector<NodeSpec> nodes;
  for (int k = 0; k < 6; ++k) nodes.push_back(k % 2 == 0 ? NodeSpec::momentum() : NodeSpec::gkp_plus());
  const SubsystemGraph g = build_cluster(grid, nodes, kAlpha);
  CHECK(logical_subgraph(g) == grid);
  for (const auto &e : g.edges()) {
    CHECK(is_filled(g.node(e.a).state));
    CHECK(is_filled(g.node(e.b).state));
  }
}

TEST_CASE("GKP node with two momentum neighbors follows the same rules") {
  const SubsystemGraph g = build_cluster(
      AdjacencyMatrix::chain(3), {NodeSpec::momentum(), NodeSpec::gkp("psi", psi()), NodeSpec::momentum()}, kAlpha);
  // Every edge touching mode 1's open circle is gone; each momentum side keeps
  // its l-l, u-l and u-m couplings.
  CHECK(g.edges() == edges_of({{0, 3, 1}, {2, 3, 1}, {2, 4, 2}, {3, 6, 1}, {3, 8, 1}, {4, 8, 2}}));
}

TEST_CASE("single mode and empty graphs") {
  const SubsystemGraph one = build_cluster(AdjacencyMatrix(1), {NodeSpec::momentum()}, kAlpha);
  CHECK(one.nodes().size() == 3);
  CHECK(one.edges().empty());
  const SubsystemGraph empty = build_cluster(AdjacencyMatrix(0), {}, kAlpha);
  CHECK(empty.mode_count() == 0);
  CHECK(logical_subgraph(empty).size() == 0);
}

TEST_CASE("build rejects mismatched inputs") {
  CHECK_THROWS_AS(build_cluster(AdjacencyMatrix::chain(3), {NodeSpec::momentum()}, kAlpha), DomainError);
  CHECK_THROWS_AS(build_cluster(AdjacencyMatrix::chain(2).scaled(2.0), {NodeSpec::momentum(), NodeSpec::momentum()}, kAlpha),
                  DomainError);
}

TEST_CASE("modular-zero absorption deletes incident edges") {
  std::vector<Node> nodes = {{0, 0, NodeKind::Logical, LogicalPlus{}},
                             {1, 0, NodeKind::GaugeBin, UniformBin{}},
                             {2, 0, NodeKind::GaugeModular, ModularZero{}},
                             {3, 1, NodeKind::Logical, LogicalPlus{}},
                             {4, 1, NodeKind::GaugeBin, UniformBin{}},
                             {5, 1, NodeKind::GaugeModular, UniformModular{}}};
  const auto kept = absorb_modular_zero(nodes, {{0, 3, 1}, {2, 3, 1}, {2, 4, 2}, {1, 5, 2}});
  CHECK(kept == edges_of({{0, 3, 1}, {1, 5, 2}}));
}

TEST_CASE("graph soundness on random binary graphs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> sizes(1, 8);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> types(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(sizes(rng));
    AdjacencyMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) a.set(i, j, 1.0);
    std::vector<NodeSpec> nodes;
    for (std::size_t i = 0; i < n; ++i) {
      const int t = types(rng);
      nodes.push_back(t == 0 ? NodeSpec::momentum() : t == 1 ? NodeSpec::gkp_plus() : NodeSpec::gkp("psi", psi()));
    }
    const SubsystemGraph g = build_cluster(a, nodes, kAlpha);
    REQUIRE(g.nodes().size() == 3 * n);
    CHECK(logical_subgraph(g) == a);
    for (const auto &e : g.edges()) {
      const Node &x = g.node(e.a);
      const Node &y = g.node(e.b);
      CHECK(is_filled(x.state));
      CHECK(is_filled(y.state));
      CHECK_FALSE((x.kind == NodeKind::GaugeBin && y.kind != NodeKind::GaugeModular));
      const bool mu = (x.kind == NodeKind::GaugeBin) != (y.kind == NodeKind::GaugeBin);
      CHECK(e.multiplicity == (mu ? 2 : 1));
    }
    CHECK(from_json(to_json(g)) == g);
  }
}

TEST_CASE("json round trip") {
  const AdjacencyMatrix grid = AdjacencyMatrix::grid(2, 3);
  std::vector<NodeSpec> nodes(6, NodeSpec::momentum());
  nodes[5] = NodeSpec::gkp("psi", psi());
  nodes[2] = NodeSpec::gkp_plus();
  const SubsystemGraph g = build_cluster(grid, nodes, kAlpha);
  const std::string text = to_json(g);
  const SubsystemGraph back = from_json(text);
  CHECK(back == g);
  CHECK(structurally_equal(back, g));
  CHECK(to_json(back) == text);
  CHECK(node_specs(back)[5].label == "psi");
}

TEST_CASE("json of the empty graph") {
  const std::string text = to_json(build_cluster(AdjacencyMatrix(0), {}, kAlpha));
  CHECK(text.find("\"modes\": []") != std::string::npos);
  CHECK(text.find("\"nodes\": []") != std::string::npos);
  CHECK(text.find("\"edges\": []") != std::string::npos);
  CHECK(from_json(text).mode_count() == 0);
}

TEST_CASE("json errors carry a location") {
  const std::string text = to_json(build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::momentum(), NodeSpec::momentum()}, kAlpha));
  CHECK_THROWS_AS(from_json(text.substr(0, text.size() / 2)), ParseError);
  try {
    from_json(text.substr(0, text.size() / 2));
  } catch (const ParseError &e) {
    CHECK(e.where().rfind("byte", 0) == 0);
  }
  try {
    from_json(R"({"alpha": 1.0, "modes": [], "nodes": []})");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.where() == "/edges");
  }
  // An edge on an open circle violates the absorption invariant.
  const std::string gkp = to_json(build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::gkp_plus(), NodeSpec::gkp_plus()}, kAlpha));
  std::string bad = gkp;
  const auto pos = bad.find("\"a\": 0");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 6, "\"a\": 2");
  CHECK_THROWS_AS(from_json(bad), ParseError);
}

TEST_CASE("dot rendering") {
  const SubsystemGraph one = build_cluster(AdjacencyMatrix(1), {NodeSpec::momentum()}, kAlpha);
  const std::string dot1 = render_dot(one);
  CHECK(count_lines(dot1, "style=filled") == 3);
  CHECK(count_lines(dot1, " -- ") == 0);
  CHECK(dot1.find("shape=diamond") != std::string::npos);
  CHECK(dot1.find("shape=box") != std::string::npos);
  CHECK(dot1.find("shape=circle") != std::string::npos);

  const SubsystemGraph gkp = build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::gkp_plus(), NodeSpec::gkp_plus()}, kAlpha);
  const std::string dot2 = render_dot(gkp);
  CHECK(count_lines(dot2, " -- ") == 1);
  CHECK(dot2.find("n0 -- n3;") != std::string::npos);
  CHECK(count_lines(dot2, "style=filled") == 4);  // two open circles
  CHECK(render_dot(gkp) == dot2);

  const SubsystemGraph cv = build_cluster(AdjacencyMatrix::chain(2), {NodeSpec::momentum(), NodeSpec::momentum()}, kAlpha);
  CHECK(count_lines(render_dot(cv), "n1 -- n5;") == 2);

  const std::string empty = render_dot(build_cluster(AdjacencyMatrix(0), {}, kAlpha));
  CHECK(empty.rfind("graph subsystem {", 0) == 0);
  CHECK(count_lines(empty, "subgraph") == 0);
}

TEST_CASE("qubit amplitudes") {
  const QubitAmplitudes h = QubitAmplitudes::plus().hadamard();
  CHECK(std::abs(h.c0 - 1.0) < 1e-15);
  CHECK(std::abs(h.c1) < 1e-15);
  CHECK(overlap_fidelity(psi(), psi().hadamard().hadamard()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((QubitAmplitudes{0.0, 0.0}.normalized()), DomainError);
  CHECK(parse_cv_type("gkp_plus") == CvType::GkpPlus);
  CHECK(to_string(CvType::GkpLabeled) == "gkp_labeled");
}
