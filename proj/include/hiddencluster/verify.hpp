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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/oracle.hpp"

namespace hiddencluster::verify {

struct VerifyConfig {
  int n = 3;                 // oracle grid size, 1..4
  std::size_t n_modes = 3;   // largest wire / chain, 2..3
  double alpha = BinSize::kSqrtPi;
  double g_scale = 1.0;      // multiplies the tuned weight on the direct route
  std::uint64_t seed = 0;
  int phase_samples = 1000;
  int phase_weights = 20;
  int random_inputs = 20;
  int random_graphs = 200;
};

/// Throws DomainError when the grid or mode count exceeds the dense bound.
void check_bounds(const VerifyConfig &config);

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// C_int[A] (|CS_A>_L (x) |Phi_A>_G) assembled factor by factor from the tuned
/// operator families, without going through recomposed positions. Labeled
/// GKP inputs enter through their logical amplitudes; GKP gauge factors sit at
/// u = 0.
oracle::DiscretizedState factorized_cluster_state(const oracle::GridSpec &grid,
                                                  const AdjacencyMatrix &adjacency,
                                                  const std::vector<NodeSpec> &nodes);

/// C_Z[g_scale * (pi / alpha^2) A] applied to the product of resource states.
oracle::DiscretizedState direct_cluster_state(const oracle::GridSpec &grid,
                                              const AdjacencyMatrix &adjacency,
                                              const std::vector<NodeSpec> &nodes,
                                              double g_scale = 1.0);

/// Qubit graph state CZ[A] applied to the given single-qubit inputs.
Eigen::VectorXcd qubit_cluster_state(const AdjacencyMatrix &adjacency,
                                     const std::vector<QubitAmplitudes> &inputs);

/// Pairs of (mode, kind) factors whose amplitude phase does not separate.
std::vector<std::pair<oracle::Factor, oracle::Factor>> oracle_coupled_pairs(
    const oracle::DiscretizedState &state, double tol = 1e-9);

/// Same pairs read from the symbolic graph's edges.
std::vector<std::pair<oracle::Factor, oracle::Factor>> graph_coupled_pairs(const SubsystemGraph &graph);

/// Random qubit with both amplitudes bounded away from zero.
QubitAmplitudes random_qubit(std::mt19937_64 &rng);

VerifyReport run_verification(const VerifyConfig &config);

/// Byte-stable JSON report.
std::string report_to_json(const VerifyReport &report, const VerifyConfig &config);

}  // namespace hiddencluster::verify
