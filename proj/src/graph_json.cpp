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

#include <json.hpp>

#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/error.hpp"

namespace hiddencluster {

using nlohmann::json;

namespace {

json amplitudes_to_json(const QubitAmplitudes &a) {
  return json::array({json::array({a.c0.real(), a.c0.imag()}), json::array({a.c1.real(), a.c1.imag()})});
}

NodeKind parse_kind(const std::string &text, const std::string &where) {
  if (text == "logical") return NodeKind::Logical;
  if (text == "gauge_m") return NodeKind::GaugeBin;
  if (text == "gauge_u") return NodeKind::GaugeModular;
  throw ParseError(where, "unknown node kind '" + text + "'");
}

// Typed field access that reports the JSON pointer of the offending value.
class Reader {
 public:
  Reader(const json &value, std::string where) : value_(value), where_(std::move(where)) {}

  const json &at(const char *key) const {
    if (!value_.is_object()) throw ParseError(where_, "expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) throw ParseError(path(key), "missing key");
    return *it;
  }
  bool has(const char *key) const { return value_.is_object() && value_.contains(key); }
  std::string path(const char *key) const { return where_ + "/" + key; }

  double number(const char *key) const {
    const json &v = at(key);
    if (!v.is_number()) throw ParseError(path(key), "expected a number");
    return v.get<double>();
  }
  long long integer(const char *key) const {
    const json &v = at(key);
    if (!v.is_number_integer()) throw ParseError(path(key), "expected an integer");
    return v.get<long long>();
  }
  std::string string(const char *key) const {
    const json &v = at(key);
    if (!v.is_string()) throw ParseError(path(key), "expected a string");
    return v.get<std::string>();
  }
  const json &array(const char *key) const {
    const json &v = at(key);
    if (!v.is_array()) throw ParseError(path(key), "expected an array");
    return v;
  }

 private:
  const json &value_;
  std::string where_;
};

QubitAmplitudes parse_amplitudes(const json &v, const std::string &where) {
  auto complex_at = [&](std::size_t k) {
    const json &c = v[k];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw ParseError(where + "/" + std::to_string(k), "expected [re, im]");
    }
    return Complex{c[0].get<double>(), c[1].get<double>()};
  };
  if (!v.is_array() || v.size() != 2) throw ParseError(where, "expected two complex amplitudes");
  return {complex_at(0), complex_at(1)};
}

}  // namespace

std::string to_json(const SubsystemGraph &graph) {
  json doc;
  doc["alpha"] = graph.alpha().value();
  json modes = json::array();
  for (const auto &m : graph.modes()) {
    json jm;
    jm["index"] = m.index;
    jm["cv_type"] = std::string(to_string(m.cv_type));
    const Node &logical = graph.node(m.node(NodeKind::Logical));
    if (const auto *labeled = std::get_if<LogicalLabeled>(&logical.state)) {
      jm["label"] = labeled->label;
      jm["amplitudes"] = amplitudes_to_json(labeled->amplitudes);
    }
    modes.push_back(std::move(jm));
  }
  json nodes = json::array();
  for (const auto &n : graph.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"mode", n.mode},
                     {"kind", std::string(to_string(n.kind))},
                     {"state", std::string(state_name(n.state))}});
  }
  json edges = json::array();
  for (const auto &e : graph.edges()) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"multiplicity", e.multiplicity}});
  }
  doc["modes"] = std::move(modes);
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

SubsystemGraph from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  const Reader root(doc, "");
  const double alpha_value = root.number("alpha");
  if (!(alpha_value > 0.0)) throw ParseError("/alpha", "bin size must be > 0");
  const BinSize alpha(alpha_value);

  const json &jmodes = root.array("modes");
  const json &jnodes = root.array("nodes");
  const json &jedges = root.array("edges");

  std::vector<ModeRecord> modes;
  std::vector<std::optional<LogicalLabeled>> labels;
  for (std::size_t i = 0; i < jmodes.size(); ++i) {
    const std::string where = "/modes/" + std::to_string(i);
    const Reader r(jmodes[i], where);
    const long long index = r.integer("index");
    if (index != static_cast<long long>(i)) throw ParseError(r.path("index"), "modes must be listed in index order");
    ModeRecord record;
    record.index = i;
    try {
      record.cv_type = parse_cv_type(r.string("cv_type"));
    } catch (const DomainError &e) {
      throw ParseError(r.path("cv_type"), e.what());
    }
    for (std::size_t k = 0; k < 3; ++k) record.nodes[k] = static_cast<int>(3 * i + k);
    std::optional<LogicalLabeled> labeled;
    if (record.cv_type == CvType::GkpLabeled) {
      labeled = LogicalLabeled{r.has("label") ? r.string("label") : std::string(),
                               parse_amplitudes(r.at("amplitudes"), r.path("amplitudes"))};
    }
    labels.push_back(std::move(labeled));
    modes.push_back(record);
  }

  if (jnodes.size() != 3 * modes.size()) {
    throw ParseError("/nodes", "expected " + std::to_string(3 * modes.size()) + " nodes");
  }
  std::vector<Node> nodes(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    const Reader r(jnodes[i], where);
    const long long id = r.integer("id");
    if (id < 0 || static_cast<std::size_t>(id) >= nodes.size()) throw ParseError(r.path("id"), "node id out of range");
    const long long mode = r.integer("mode");
    if (mode < 0 || static_cast<std::size_t>(mode) >= modes.size()) throw ParseError(r.path("mode"), "mode out of range");
    Node n;
    n.id = static_cast<int>(id);
    n.mode = static_cast<std::size_t>(mode);
    n.kind = parse_kind(r.string("kind"), r.path("kind"));
    const std::string state = r.string("state");
    if (state == "logical_plus") {
      n.state = LogicalPlus{};
    } else if (state == "logical_labeled") {
      if (!labels[n.mode]) throw ParseError(r.path("state"), "labeled logical node on an unlabeled mode");
      n.state = *labels[n.mode];
    } else if (state == "uniform_bin") {
      n.state = UniformBin{};
    } else if (state == "uniform_modular") {
      n.state = UniformModular{};
    } else if (state == "modular_zero") {
      n.state = ModularZero{};
    } else {
      throw ParseError(r.path("state"), "unknown node state '" + state + "'");
    }
    nodes[static_cast<std::size_t>(id)] = std::move(n);
  }

  std::vector<SubsystemEdge> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const Reader r(jedges[i], "/edges/" + std::to_string(i));
    SubsystemEdge e{static_cast<int>(r.integer("a")), static_cast<int>(r.integer("b")),
                    static_cast<int>(r.integer("multiplicity"))};
    if (e.a > e.b) std::swap(e.a, e.b);
    edges.push_back(e);
  }
  try {
    return SubsystemGraph(alpha, std::move(modes), std::move(nodes), std::move(edges));
  } catch (const DomainError &e) {
    throw ParseError("/", e.what());
  }
}

}  // namespace hiddencluster
