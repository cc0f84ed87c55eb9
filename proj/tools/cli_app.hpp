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

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/gate_decomp.hpp"
#include "hiddencluster/ssd.hpp"

namespace hiddencluster::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitUnsupported = 4,
  kExitVerifyFailed = 5,
};

/// Thrown for unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "sqrt_pi" or a positive decimal.
BinSize parse_alpha(std::string_view text);

/// "chain:N", "grid:RxC" or a path to an edge-list file.
AdjacencyMatrix parse_topology(std::string_view text);

/// Edge list: one "i j" pair per line, '#' comments, optional "modes N" line.
AdjacencyMatrix parse_edge_list(std::string_view text);

/// Comma-separated node types: p | gkp+ | gkp:<+,-,0,1> | gkp:c0,c1.
/// A single entry is repeated for every mode.
std::vector<NodeSpec> parse_nodes(std::string_view text, std::size_t n_modes);

/// Real or complex literal such as "0.6", "-0.8i" or "0.6+0.8j".
std::complex<double> parse_complex(std::string_view text);

/// Runs one command line and returns its exit code. argv[0] is skipped.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace hiddencluster::cli
