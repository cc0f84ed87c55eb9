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

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hiddencluster/ssd.hpp"

namespace hiddencluster {

/// Which diagonal subsystem operator: logical ell, gauge bin m, gauge modular u.
enum class OperatorKind { Logical, GaugeBin, GaugeModular };

std::string_view to_string(OperatorKind kind);

/// Logical and GaugeBin have integer spectra; GaugeModular is continuous.
constexpr bool has_integer_spectrum(OperatorKind kind) {
  return kind != OperatorKind::GaugeModular;
}

struct SubsystemOperator {
  OperatorKind kind = OperatorKind::Logical;
  std::size_t mode = 0;

  friend bool operator==(const SubsystemOperator &, const SubsystemOperator &) = default;
};

/// The factor exp(i * coefficient * a (x) b). All such factors commute.
struct CouplingTerm {
  SubsystemOperator a;
  SubsystemOperator b;
  double coefficient = 0.0;

  friend bool operator==(const CouplingTerm &, const CouplingTerm &) = default;
};

/// True iff both operands have integer spectrum and the coefficient is an
/// integer multiple of 2*pi (relative tolerance 1e-9), so the factor is 1.
bool is_trivial_term(const CouplingTerm &term);

/// The nine cross-subsystem terms of exp(i g q_i q_j) for modes i < j, with
/// identically-trivial factors removed. Zero-coefficient terms are dropped.
std::vector<CouplingTerm> decompose_cz_pair(std::size_t mode_i, std::size_t mode_j, double g,
                                            BinSize alpha);

/// decompose_cz_pair on modes (0, 1).
std::vector<CouplingTerm> decompose_cz_two_mode(double g, BinSize alpha);

/// Real symmetric N x N weight matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n_modes);
  /// Throws DomainError on asymmetry, nonzero diagonal or non-finite entries.
  explicit AdjacencyMatrix(Eigen::MatrixXd entries);

  static AdjacencyMatrix chain(std::size_t n_modes);
  static AdjacencyMatrix grid(std::size_t rows, std::size_t cols);
  static AdjacencyMatrix from_edges(std::size_t n_modes,
                                    const std::vector<std::pair<std::size_t, std::size_t>> &edges);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double weight);
  const Eigen::MatrixXd &entries() const noexcept { return entries_; }

  bool is_binary() const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> neighbors(std::size_t mode) const;

  AdjacencyMatrix scaled(double factor) const;
  /// Drops one mode, keeping the relative order of the others.
  AdjacencyMatrix without_mode(std::size_t mode) const;

  friend bool operator==(const AdjacencyMatrix &a, const AdjacencyMatrix &b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
};

/// 3N x 3N coupling matrix over (ell, m, u) blocks per mode: V (x) (a a^T)
/// with a = (alpha, 2 alpha, 1).
struct ExpandedAdjacency {
  Eigen::MatrixXd entries;

  std::size_t n_modes() const noexcept { return static_cast<std::size_t>(entries.rows() / 3); }
  /// 3x3 block coupling mode i to mode j.
  Eigen::Matrix3d block(std::size_t i, std::size_t j) const;
};

/// The per-mode coefficient vector a = (alpha, 2 alpha, 1).
Eigen::Vector3d coefficient_vector(BinSize alpha);

ExpandedAdjacency expand_adjacency(const AdjacencyMatrix &weights, BinSize alpha);

/// Surviving terms of the tuned gate C_Z[(pi / alpha^2) A], by operator family.
struct MultimodeDecomposition {
  std::vector<CouplingTerm> logical_terms;      // ell-ell, pi per edge
  std::vector<CouplingTerm> gauge_terms;        // m-u (2 pi / alpha), u-u (pi / alpha^2)
  std::vector<CouplingTerm> interaction_terms;  // ell-u, pi / alpha

  std::size_t size() const {
    return logical_terms.size() + gauge_terms.size() + interaction_terms.size();
  }
  std::vector<CouplingTerm> all() const;
};

/// Requires a binary adjacency matrix; general weights go through
/// decompose_cz_general.
MultimodeDecomposition decompose_cz_multimode(const AdjacencyMatrix &binary, BinSize alpha);

/// Pairwise nine-term decomposition of exp((i/2) q^T V q) for arbitrary V.
std::vector<CouplingTerm> decompose_cz_general(const AdjacencyMatrix &weights, BinSize alpha);

/// Factorization of exp(i c ell_L (x) u_G) into a modular shift on the gauge
/// mode and a logical z-rotation controlled on u_G:
///   exp(i (c/2) u_G) * R^z_L(c u_G).
struct ControlledRotationForm {
  bool identity = false;
  std::size_t gauge_mode = 0;    // mode owning u_G (control)
  std::size_t logical_mode = 0;  // mode owning the rotated logical qubit
  double modular_shift_coefficient = 0.0;  // c / 2
  double rotation_angle_per_u = 0.0;       // c; angle theta = c * u_G
  std::string description;
};

/// Throws DomainError unless the term couples Logical with GaugeModular.
ControlledRotationForm interaction_as_controlled_rotation(const CouplingTerm &term);

}  // namespace hiddencluster
