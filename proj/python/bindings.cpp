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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli_app.hpp"
#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/error.hpp"
#include "hiddencluster/gate_decomp.hpp"
#include "hiddencluster/measurement.hpp"
#include "hiddencluster/oracle.hpp"
#include "hiddencluster/ssd.hpp"
#include "hiddencluster/verify.hpp"

namespace py = pybind11;
using namespace hiddencluster;

namespace {

BinSize to_alpha(double alpha) { return BinSize(alpha); }

std::vector<NodeSpec> to_specs(const std::string &nodes, std::size_t n_modes) {
  return cli::parse_nodes(nodes, n_modes);
}

py::tuple label_tuple(const QubitAmplitudes &a) { return py::make_tuple(a.c0, a.c1); }

py::dict term_dict(const CouplingTerm &t) {
  py::dict d;
  d["a"] = py::make_tuple(std::string(to_string(t.a.kind)), t.a.mode);
  d["b"] = py::make_tuple(std::string(to_string(t.b.kind)), t.b.mode);
  d["coefficient"] = t.coefficient;
  return d;
}

py::array_t<std::complex<double>> amplitudes(const oracle::DiscretizedState &s) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(s.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < s.size(); ++i) view(static_cast<py::ssize_t>(i)) = s[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_hiddencluster, m) {
  m.doc() = "Subsystem-decomposed cluster-state graphs with a dense grid oracle";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedMeasurement>(m, "UnsupportedMeasurement", PyExc_RuntimeError);
  py::register_exception<UnsupportedTopology>(m, "UnsupportedTopology", PyExc_RuntimeError);

  m.attr("SQRT_PI") = BinSize::kSqrtPi;

  m.def(
      "decompose_position",
      [](double x, double alpha) {
        const QuantumNumbers q = decompose_position(x, to_alpha(alpha));
        return py::make_tuple(q.ell, q.m, q.u);
      },
      py::arg("x"), py::arg("alpha") = BinSize::kSqrtPi, "Position value to (ell, m, u).");
  m.def(
      "recompose",
      [](int ell, std::int64_t mm, double u, double alpha) { return recompose({ell, mm, u}, to_alpha(alpha)); },
      py::arg("ell"), py::arg("m"), py::arg("u"), py::arg("alpha") = BinSize::kSqrtPi);
  m.def(
      "gauge_position",
      [](int ell, std::int64_t mm, double u, double alpha) { return gauge_position({ell, mm, u}, to_alpha(alpha)); },
      py::arg("ell"), py::arg("m"), py::arg("u"), py::arg("alpha") = BinSize::kSqrtPi);

  m.def(
      "decompose_cz_two_mode",
      [](double g, double alpha) {
        py::list out;
        for (const auto &t : decompose_cz_two_mode(g, to_alpha(alpha))) out.append(term_dict(t));
        return out;
      },
      py::arg("g"), py::arg("alpha") = BinSize::kSqrtPi, "Surviving coupling terms of exp(i g q1 q2).");
  m.def(
      "decompose_cz_multimode",
      [](const Eigen::MatrixXd &a, double alpha) {
        const MultimodeDecomposition d = decompose_cz_multimode(AdjacencyMatrix(a), to_alpha(alpha));
        py::dict out;
        auto listify = [](const std::vector<CouplingTerm> &terms) {
          py::list l;
          for (const auto &t : terms) l.append(term_dict(t));
          return l;
        };
        out["logical"] = listify(d.logical_terms);
        out["gauge"] = listify(d.gauge_terms);
        out["interaction"] = listify(d.interaction_terms);
        return out;
      },
      py::arg("adjacency"), py::arg("alpha") = BinSize::kSqrtPi);
  m.def(
      "expand_adjacency",
      [](const Eigen::MatrixXd &v, double alpha) { return expand_adjacency(AdjacencyMatrix(v), to_alpha(alpha)).entries; },
      py::arg("weights"), py::arg("alpha") = BinSize::kSqrtPi, "V (x) (a a^T) with a = (alpha, 2 alpha, 1).");

  py::class_<SubsystemGraph>(m, "SubsystemGraph")
      .def_property_readonly("alpha", [](const SubsystemGraph &g) { return g.alpha().value(); })
      .def_property_readonly("mode_count", &SubsystemGraph::mode_count)
      .def_property_readonly("node_count", [](const SubsystemGraph &g) { return g.nodes().size(); })
      .def_property_readonly("edges",
                             [](const SubsystemGraph &g) {
                               std::vector<std::tuple<int, int, int>> out;
                               for (const auto &e : g.edges()) out.emplace_back(e.a, e.b, e.multiplicity);
                               return out;
                             })
      .def("node_state", [](const SubsystemGraph &g, int id) { return std::string(state_name(g.node(id).state)); })
      .def("cv_type", [](const SubsystemGraph &g, std::size_t mode) { return std::string(to_string(g.mode(mode).cv_type)); })
      .def("logical_subgraph", [](const SubsystemGraph &g) { return logical_subgraph(g).entries(); })
      .def("to_json", [](const SubsystemGraph &g) { return to_json(g); })
      .def("render_dot", [](const SubsystemGraph &g) { return render_dot(g); })
      .def("__eq__", [](const SubsystemGraph &a, const SubsystemGraph &b) { return a == b; });

  m.def(
      "build_cluster",
      [](const Eigen::MatrixXd &a, const std::string &nodes, double alpha) {
        const AdjacencyMatrix adj(a);
        return build_cluster(adj, to_specs(nodes, adj.size()), to_alpha(alpha));
      },
      py::arg("adjacency"), py::arg("nodes"), py::arg("alpha") = BinSize::kSqrtPi,
      "Node types as on the command line: p | gkp+ | gkp:<label> | gkp:c0,c1.");
  m.def("from_json", [](const std::string &text) { return from_json(text); }, py::arg("text"));
  m.def("chain", [](std::size_t n) { return AdjacencyMatrix::chain(n).entries(); }, py::arg("n"));
  m.def("grid", [](std::size_t r, std::size_t c) { return AdjacencyMatrix::grid(r, c).entries(); }, py::arg("rows"),
        py::arg("cols"));

  m.def(
      "measure_p0",
      [](const SubsystemGraph &g, std::size_t mode) {
        LogicalFrame frame;
        if (const auto *l = std::get_if<LogicalLabeled>(&g.node(mode, NodeKind::Logical).state)) {
          frame.current_label = l->amplitudes;
        }
        const MeasurementResult r = measure_p0(g, mode, frame);
        return py::make_tuple(r.graph, r.frame.hadamard_count, label_tuple(r.frame.current_label));
      },
      py::arg("graph"), py::arg("mode"), "Returns (graph, hadamard_count, (c0, c1)).");
  m.def(
      "run_wire",
      [](const SubsystemGraph &g, std::size_t steps) {
        const WireRun r = run_wire(g, steps);
        std::vector<std::size_t> measured;
        for (const auto &rec : r.records) measured.push_back(rec.measured_mode);
        return py::make_tuple(r.graph, r.frame.hadamard_count, label_tuple(r.frame.current_label), measured);
      },
      py::arg("graph"), py::arg("steps"), "Returns (graph, hadamard_count, (c0, c1), measured modes).");

  m.def(
      "cluster_state",
      [](int n, const Eigen::MatrixXd &a, const std::string &nodes, double alpha) {
        const AdjacencyMatrix adj(a);
        return amplitudes(
            verify::direct_cluster_state(oracle::GridSpec(n, to_alpha(alpha)), adj, to_specs(nodes, adj.size())));
      },
      py::arg("n"), py::arg("adjacency"), py::arg("nodes"), py::arg("alpha") = BinSize::kSqrtPi,
      "Dense oracle amplitudes of CZ[(pi / alpha^2) A] on the resource product.");

  m.def(
      "verify",
      [](int n, std::size_t modes, double alpha, double g_scale, std::uint64_t seed) {
        verify::VerifyConfig config;
        config.n = n;
        config.n_modes = modes;
        config.alpha = alpha;
        config.g_scale = g_scale;
        config.seed = seed;
        return verify::report_to_json(verify::run_verification(config), config);
      },
      py::arg("n") = 3, py::arg("modes") = 3, py::arg("alpha") = BinSize::kSqrtPi, py::arg("g_scale") = 1.0,
      py::arg("seed") = 0, "Runs the oracle checks and returns the JSON report.");
}
