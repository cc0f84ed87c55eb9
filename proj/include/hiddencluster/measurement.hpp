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

#include <cstddef>
#include <string>
#include <vector>

#include "hiddencluster/cluster_graph.hpp"

namespace hiddencluster {

/// Logical Clifford byproduct accumulated along a wire. At outcome 0 every hop
/// contributes one Hadamard and no Pauli.
struct LogicalFrame {
  int hadamard_count = 0;
  QubitAmplitudes current_label = QubitAmplitudes::plus();
};

struct MeasurementRecord {
  std::size_t measured_mode = 0;  // index in the graph before the step
  double outcome = 0.0;           // always 0
  std::vector<int> removed_nodes;  // ids in the graph before the step
  std::size_t neighbor_mode = 0;   // index in the graph before the step
  int converted_node = 0;          // neighbor's gauge_u id before the step
};

/// |0><0|_p = |+><+|_L (x) |0><0|_{p,G}: an X_L measurement with outcome +1
/// and a gauge p_G = 0 projection.
struct P0Factorization {
  std::string logical_basis = "X";
  int logical_outcome = +1;
  std::string gauge_quadrature = "p";
  double gauge_value = 0.0;

  friend bool operator==(const P0Factorization &, const P0Factorization &) = default;
};

P0Factorization factorize_p0_projector();

struct MeasurementResult {
  SubsystemGraph graph;
  LogicalFrame frame;
  MeasurementRecord record;
};

/// Unzip rewrite for a p-measurement with outcome 0 on a GKP-type mode of
/// CV-level degree 1. The measured mode is removed and later modes shift down
/// by one index; the neighbor's circle opens and its logical node carries H
/// applied to the measured label.
///
/// Throws UnsupportedMeasurement for a momentum mode and UnsupportedTopology
/// when the degree is not 1.
MeasurementResult measure_p0(const SubsystemGraph &graph, std::size_t mode, const LogicalFrame &frame);

struct WireRun {
  SubsystemGraph graph;
  LogicalFrame frame;
  std::vector<MeasurementRecord> records;
};

/// Index of the GKP-type end of a linear wire (the last mode wins a tie).
/// Throws UnsupportedTopology if the logical subgraph is not a path and
/// UnsupportedMeasurement if neither end is GKP-type.
std::size_t wire_input_end(const SubsystemGraph &graph);

/// Applies measure_p0 `steps` times from the input end. steps <= N - 1.
WireRun run_wire(const SubsystemGraph &graph, std::size_t steps);

/// Name of H applied to a named label: + <-> 0, - <-> 1, otherwise an "H" prefix.
std::string hadamard_label(const std::string &label);

}  // namespace hiddencluster
