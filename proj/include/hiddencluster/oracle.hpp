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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hiddencluster/cluster_graph.hpp"
#include "hiddencluster/gate_decomp.hpp"
#include "hiddencluster/ssd.hpp"

namespace hiddencluster::oracle {

/// Finite ell/m/u grid for one mode: ell in {0, 1}, n consecutive bin numbers
/// and n modular samples u_j = alpha * j / n, both indexed from -floor(n/2).
/// Matching the two counts makes sum_m exp(2 pi i m j / n) vanish for every
/// j != 0 on the grid, so p-projections unzip exactly.
class GridSpec {
 public:
  GridSpec(int n, BinSize alpha);

  int n() const noexcept { return n_; }
  BinSize alpha() const noexcept { return alpha_; }
  /// Per-mode dimension 2 n^2.
  std::size_t mode_dim() const noexcept { return 2 * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  int first_value() const noexcept { return -(n_ / 2); }

  /// Bin number and modular sample index for positions 0..n-1.
  std::int64_t bin_value(int m_index) const { return first_value() + m_index; }
  int sample_value(int u_index) const { return first_value() + u_index; }
  double modular_value(int u_index) const;
  /// Position of u_j = 0.
  int zero_sample_index() const noexcept { return -first_value(); }

  /// Local index of (ell, m_index, u_index) within one mode.
  std::size_t local_index(int ell, int m_index, int u_index) const {
    return (static_cast<std::size_t>(ell) * n_ + m_index) * n_ + u_index;
  }
  QuantumNumbers quantum_numbers(std::size_t local) const;

  friend bool operator==(const GridSpec &, const GridSpec &) = default;

 private:
  int n_;
  BinSize alpha_;
};

/// A subsystem factor: one of ell / m / u of one mode.
struct Factor {
  std::size_t mode = 0;
  OperatorKind kind = OperatorKind::Logical;

  friend bool operator==(const Factor &, const Factor &) = default;
};

/// Dense amplitudes over (2 n^2)^N, mode 0 most significant and
/// (ell, m, u) order inside each mode.
class DiscretizedState {
 public:
  using Complex = std::complex<double>;

  DiscretizedState(GridSpec grid, std::size_t n_modes);  // all-zero vector
  DiscretizedState(GridSpec grid, std::size_t n_modes, std::vector<Complex> amplitudes);

  const GridSpec &grid() const noexcept { return grid_; }
  std::size_t n_modes() const noexcept { return n_modes_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  const std::vector<Complex> &amplitudes() const noexcept { return amplitudes_; }
  std::vector<Complex> &amplitudes() noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  /// Local index of `mode` inside the global basis index.
  std::size_t local_index(std::size_t global, std::size_t mode) const;
  /// Value index of `factor` at a global basis index (ell, m_index or u_index).
  int factor_index(std::size_t global, const Factor &factor) const;
  QuantumNumbers quantum_numbers(std::size_t global, std::size_t mode) const;

  double norm() const;
  /// Throws DomainError on the zero vector.
  DiscretizedState normalized() const;

 private:
  GridSpec grid_;
  std::size_t n_modes_;
  std::vector<Complex> amplitudes_;
};

/// Factor dimension: 2 for logical, n for either gauge factor.
std::size_t factor_dim(const GridSpec &grid, OperatorKind kind);

/// Uniform superposition over all 2 n^2 points of one mode.
DiscretizedState prepare_momentum_state(const GridSpec &grid);
/// sum_ell c_ell sum_m |ell, m, u = 0>, normalized.
DiscretizedState prepare_gkp_state(const GridSpec &grid, std::complex<double> c0, std::complex<double> c1);
/// Single-mode resource state for a node spec.
DiscretizedState prepare_resource(const GridSpec &grid, const NodeSpec &spec);

/// a (x) b with a's modes first.
DiscretizedState tensor(const DiscretizedState &a, const DiscretizedState &b);
DiscretizedState product_state(const GridSpec &grid, const std::vector<NodeSpec> &specs);

/// Multiplies every amplitude by exp(i g x_i x_j), x = recompose(grid point).
DiscretizedState apply_cz(const DiscretizedState &state, std::size_t mode_i, std::size_t mode_j,
                          double g);
/// exp((i/2) x^T V x) over all pairs.
DiscretizedState apply_cz_matrix(const DiscretizedState &state, const AdjacencyMatrix &weights);
/// Multiplies every amplitude by exp(i c a b) with a, b the factor eigenvalues.
DiscretizedState apply_term(const DiscretizedState &state, const CouplingTerm &term);

/// Eigenvalue of a factor operator at a grid point (u in position units).
double factor_eigenvalue(const GridSpec &grid, const QuantumNumbers &q, OperatorKind kind);

struct Projection {
  DiscretizedState state;  // unnormalized, on the remaining modes
  double norm = 0.0;       // pre-normalization norm of `state`
};

/// Contracts `mode` with the uniform unit bra (the grid's <0|_p).
Projection project_p0(const DiscretizedState &state, std::size_t mode);

/// Partial trace onto `keep` (in the given order, first factor most significant).
Eigen::MatrixXcd reduced_density(const DiscretizedState &state, const std::vector<Factor> &keep);
/// Logical factors of every listed mode.
Eigen::MatrixXcd logical_density(const DiscretizedState &state, const std::vector<std::size_t> &modes);

double purity(const Eigen::MatrixXcd &rho);
double trace_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// |<a|b>|^2 for unit vectors.
double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);
/// <psi| rho |psi>.
double fidelity(const Eigen::VectorXcd &psi, const Eigen::MatrixXcd &rho);
/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
double fidelity(const DiscretizedState &a, const DiscretizedState &b);

/// Expectation <A B> - <A><B> of two diagonal factor operators.
double connected_correlator(const DiscretizedState &state, const Factor &a, const Factor &b);

/// Largest |mixed phase difference| phi(a,b) - phi(a',b) - phi(a,b') + phi(a',b')
/// over all value pairs and all other factors, wrapped to (-pi, pi]. Zero iff
/// the amplitude phase separates in those two factors, i.e. there is no
/// coupling edge between them. Points with amplitude below `support` are skipped.
double phase_coupling(const DiscretizedState &state, const Factor &a, const Factor &b,
                      double support = 1e-9);

/// Largest per-amplitude deviation after aligning the global phase on the
/// largest-magnitude amplitude of `reference`.
double max_amplitude_deviation(const DiscretizedState &state, const DiscretizedState &reference);

/// Regression dump: "HCDS" magic, u32 version, u32 n, u32 n_modes, f64 alpha,
/// then little-endian f64 (re, im) pairs.
void write_binary(std::ostream &out, const DiscretizedState &state);
DiscretizedState read_binary(std::istream &in);

}  // namespace hiddencluster::oracle
