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

#include "hiddencluster/gate_decomp.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "hiddencluster/error.hpp"

namespace hiddencluster {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMultipleTolerance = 1e-9;

constexpr OperatorKind kKinds[3] = {OperatorKind::Logical, OperatorKind::GaugeBin,
                                    OperatorKind::GaugeModular};

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Logical:
      return "logical";
    case OperatorKind::GaugeBin:
      return "gauge_m";
    case OperatorKind::GaugeModular:
      return "gauge_u";
  }
  return "?";
}

bool is_trivial_term(const CouplingTerm &term) {
  if (!has_integer_spectrum(term.a.kind) || !has_integer_spectrum(term.b.kind)) {
    return false;
  }
  const double turns = term.coefficient / kTwoPi;
  const double nearest = std::round(turns);
  return std::abs(turns - nearest) <= kMultipleTolerance * std::max(1.0, std::abs(turns));
}

Eigen::Vector3d coefficient_vector(BinSize alpha) {
  const double a = alpha.value();
  return {a, 2.0 * a, 1.0};
}

std::vector<CouplingTerm> decompose_cz_pair(std::size_t mode_i, std::size_t mode_j, double g,
                                            BinSize alpha) {
  if (!std::isfinite(g)) {
    throw DomainError("controlled-Z weight must be finite");
  }
  if (mode_i == mode_j) {
    throw DomainError("controlled-Z needs two distinct modes");
  }
  const Eigen::Vector3d coeff = coefficient_vector(alpha);
  std::vector<CouplingTerm> terms;
  terms.reserve(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      CouplingTerm t{{kKinds[r], mode_i}, {kKinds[c], mode_j}, g * coeff[r] * coeff[c]};
      if (t.coefficient == 0.0 || is_trivial_term(t)) continue;
      terms.push_back(t);
    }
  }
  return terms;
}

std::vector<CouplingTerm> decompose_cz_two_mode(double g, BinSize alpha) {
  return decompose_cz_pair(0, 1, g, alpha);
}

// --- AdjacencyMatrix -------------------------------------------------------

AdjacencyMatrix::AdjacencyMatrix(std::size_t n_modes)
    : entries_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_modes),
                                     static_cast<Eigen::Index>(n_modes))) {}

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DomainError("adjacency matrix must be square");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if (entries_(i, i) != 0.0) {
      throw DomainError("adjacency matrix must have zero diagonal");
    }
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (!std::isfinite(entries_(i, j))) {
        throw DomainError("adjacency matrix entries must be finite");
      }
      if (entries_(i, j) != entries_(j, i)) {
        throw DomainError("adjacency matrix must be symmetric");
      }
    }
  }
}

AdjacencyMatrix AdjacencyMatrix::chain(std::size_t n_modes) {
  AdjacencyMatrix a(n_modes);
  for (std::size_t i = 0; i + 1 < n_modes; ++i) a.set(i, i + 1, 1.0);
  return a;
}

AdjacencyMatrix AdjacencyMatrix::grid(std::size_t rows, std::size_t cols) {
  AdjacencyMatrix a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t k = r * cols + c;
      if (c + 1 < cols) a.set(k, k + 1, 1.0);
      if (r + 1 < rows) a.set(k, k + cols, 1.0);
    }
  }
  return a;
}

AdjacencyMatrix AdjacencyMatrix::from_edges(
    std::size_t n_modes, const std::vector<std::pair<std::size_t, std::size_t>> &edges) {
  AdjacencyMatrix a(n_modes);
  for (const auto &[i, j] : edges) {
    if (i >= n_modes || j >= n_modes) {
      throw DomainError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") references a missing mode");
    }
    if (i == j) throw DomainError("self-loop on mode " + std::to_string(i));
    a.set(i, j, 1.0);
  }
  return a;
}

void AdjacencyMatrix::set(std::size_t i, std::size_t j, double weight) {
  if (i >= size() || j >= size()) throw DomainError("adjacency index out of range");
  if (i == j && weight != 0.0) throw DomainError("adjacency matrix must have zero diagonal");
  if (!std::isfinite(weight)) throw DomainError("adjacency weight must be finite");
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  entries_(ii, jj) = weight;
  entries_(jj, ii) = weight;
}

bool AdjacencyMatrix::is_binary() const {
  return (entries_.array() == 0.0 || entries_.array() == 1.0).all();
}

std::size_t AdjacencyMatrix::edge_count() const { return edges().size(); }

std::vector<std::pair<std::size_t, std::size_t>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if ((*this)(i, j) != 0.0) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> AdjacencyMatrix::neighbors(std::size_t mode) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if ((*this)(mode, j) != 0.0) out.push_back(j);
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::scaled(double factor) const {
  return AdjacencyMatrix(Eigen::MatrixXd(entries_ * factor));
}

AdjacencyMatrix AdjacencyMatrix::without_mode(std::size_t mode) const {
  if (mode >= size()) throw DomainError("mode index out of range");
  AdjacencyMatrix out(size() - 1);
  for (std::size_t i = 0, oi = 0; i < size(); ++i) {
    if (i == mode) continue;
    for (std::size_t j = 0, oj = 0; j < size(); ++j) {
      if (j == mode) continue;
      if (i != j) {
        out.entries_(static_cast<Eigen::Index>(oi), static_cast<Eigen::Index>(oj)) = (*this)(i, j);
      }
      ++oj;
    }
    ++oi;
  }
  return out;
}

// --- expansion and decomposition -------------------------------------------

Eigen::Matrix3d ExpandedAdjacency::block(std::size_t i, std::size_t j) const {
  return entries.block<3, 3>(static_cast<Eigen::Index>(3 * i), static_cast<Eigen::Index>(3 * j));
}

ExpandedAdjacency expand_adjacency(const AdjacencyMatrix &weights, BinSize alpha) {
  const Eigen::Vector3d a = coefficient_vector(alpha);
  const Eigen::Matrix3d outer = a * a.transpose();
  return ExpandedAdjacency{Eigen::kroneckerProduct(weights.entries(), outer).eval()};
}

std::vector<CouplingTerm> MultimodeDecomposition::all() const {
  std::vector<CouplingTerm> out = logical_terms;
  out.insert(out.end(), gauge_terms.begin(), gauge_terms.end());
  out.insert(out.end(), interaction_terms.begin(), interaction_terms.end());
  return out;
}

MultimodeDecomposition decompose_cz_multimode(const AdjacencyMatrix &binary, BinSize alpha) {
  if (!binary.is_binary()) {
    throw DomainError("multimode family decomposition requires a binary adjacency matrix");
  }
  const double tuned = std::numbers::pi / (alpha.value() * alpha.value());
  MultimodeDecomposition out;
  for (const auto &[i, j] : binary.edges()) {
    for (const CouplingTerm &t : decompose_cz_pair(i, j, tuned, alpha)) {
      const bool logical_a = t.a.kind == OperatorKind::Logical;
      const bool logical_b = t.b.kind == OperatorKind::Logical;
      if (logical_a && logical_b) {
        out.logical_terms.push_back(t);
      } else if (!logical_a && !logical_b) {
        if (t.a.kind == OperatorKind::GaugeBin && t.b.kind == OperatorKind::GaugeBin) {
          throw DomainError("m-m coupling survived tuning; check alpha");
        }
        out.gauge_terms.push_back(t);
      } else {
        const OperatorKind other = logical_a ? t.b.kind : t.a.kind;
        if (other != OperatorKind::GaugeModular) {
          throw DomainError("ell-m coupling survived tuning; check alpha");
        }
        out.interaction_terms.push_back(t);
      }
    }
  }
  return out;
}

std::vector<CouplingTerm> decompose_cz_general(const AdjacencyMatrix &weights, BinSize alpha) {
  std::vector<CouplingTerm> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t j = i + 1; j < weights.size(); ++j) {
      if (weights(i, j) == 0.0) continue;
      auto pair = decompose_cz_pair(i, j, weights(i, j), alpha);
      out.insert(out.end(), pair.begin(), pair.end());
    }
  }
  return out;
}

ControlledRotationForm interaction_as_controlled_rotation(const CouplingTerm &term) {
  const SubsystemOperator *logical = nullptr;
  const SubsystemOperator *gauge = nullptr;
  if (term.a.kind == OperatorKind::Logical && term.b.kind == OperatorKind::GaugeModular) {
    logical = &term.a;
    gauge = &term.b;
  } else if (term.b.kind == OperatorKind::Logical && term.a.kind == OperatorKind::GaugeModular) {
    logical = &term.b;
    gauge = &term.a;
  } else {
    throw DomainError("controlled-rotation form needs a logical (x) gauge_u term");
  }
  ControlledRotationForm form;
  form.logical_mode = logical->mode;
  form.gauge_mode = gauge->mode;
  form.identity = term.coefficient == 0.0;
  form.modular_shift_coefficient = 0.5 * term.coefficient;
  form.rotation_angle_per_u = term.coefficient;
  std::ostringstream os;
  os.precision(17);
  if (form.identity) {
    os << "identity";
  } else {
    os << "exp(i*" << form.modular_shift_coefficient << "*u[" << form.gauge_mode << "]) * Rz_L["
       << form.logical_mode << "](" << form.rotation_angle_per_u << "*u[" << form.gauge_mode
       << "])";
  }
  form.description = os.str();
  return form;
}

}  // namespace hiddencluster
