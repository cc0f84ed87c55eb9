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

#include "hiddencluster/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "hiddencluster/error.hpp"

namespace hiddencluster::oracle {

using Complex = std::complex<double>;

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// Stride of a factor value inside one mode's local index.
std::size_t kind_stride(const GridSpec &grid, OperatorKind kind) {
  const auto n = static_cast<std::size_t>(grid.n());
  switch (kind) {
    case OperatorKind::Logical:
      return n * n;
    case OperatorKind::GaugeBin:
      return n;
    case OperatorKind::GaugeModular:
      return 1;
  }
  return 1;
}

std::size_t mode_stride(const DiscretizedState &s, std::size_t mode) {
  return ipow(s.grid().mode_dim(), s.n_modes() - 1 - mode);
}

std::size_t factor_stride(const DiscretizedState &s, const Factor &f) {
  return mode_stride(s, f.mode) * kind_stride(s.grid(), f.kind);
}

void check_mode(const DiscretizedState &s, std::size_t mode) {
  if (mode >= s.n_modes()) {
    throw DomainError("mode " + std::to_string(mode) + " out of range for a " +
                      std::to_string(s.n_modes()) + "-mode state");
  }
}

// Recomposed position of every local grid point of one mode.
std::vector<double> local_positions(const GridSpec &grid) {
  std::vector<double> x(grid.mode_dim());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = recompose(grid.quantum_numbers(k), grid.alpha());
  return x;
}

template <class PhaseFn>
DiscretizedState apply_diagonal(const DiscretizedState &state, PhaseFn phase) {
  DiscretizedState out = state;
  auto &amps = out.amplitudes();
  for (std::size_t g = 0; g < amps.size(); ++g) {
    const double theta = phase(g);
    amps[g] *= Complex{std::cos(theta), std::sin(theta)};
  }
  return out;
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

// --- GridSpec ----------------------------------------------------------------

GridSpec::GridSpec(int n, BinSize alpha) : n_(n), alpha_(alpha) {
  if (n < 1) throw DomainError("grid size n must be >= 1");
}

double GridSpec::modular_value(int u_index) const {
  return alpha_.value() * static_cast<double>(sample_value(u_index)) / static_cast<double>(n_);
}

QuantumNumbers GridSpec::quantum_numbers(std::size_t local) const {
  const auto n = static_cast<std::size_t>(n_);
  QuantumNumbers q;
  q.ell = static_cast<int>(local / (n * n));
  q.m = bin_value(static_cast<int>((local / n) % n));
  q.u = modular_value(static_cast<int>(local % n));
  return q;
}

std::size_t factor_dim(const GridSpec &grid, OperatorKind kind) {
  return kind == OperatorKind::Logical ? 2 : static_cast<std::size_t>(grid.n());
}

// --- DiscretizedState ----------------------------------------------------------

DiscretizedState::DiscretizedState(GridSpec grid, std::size_t n_modes)
    : grid_(grid), n_modes_(n_modes), amplitudes_(ipow(grid.mode_dim(), n_modes)) {}

DiscretizedState::DiscretizedState(GridSpec grid, std::size_t n_modes, std::vector<Complex> amplitudes)
    : grid_(grid), n_modes_(n_modes), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != ipow(grid_.mode_dim(), n_modes_)) {
    throw DomainError("amplitude vector length does not match the grid");
  }
  for (const auto &a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DomainError("non-finite amplitude");
  }
}

std::size_t DiscretizedState::local_index(std::size_t global, std::size_t mode) const {
  return (global / mode_stride(*this, mode)) % grid_.mode_dim();
}

int DiscretizedState::factor_index(std::size_t global, const Factor &factor) const {
  return static_cast<int>((global / factor_stride(*this, factor)) % factor_dim(grid_, factor.kind));
}

QuantumNumbers DiscretizedState::quantum_numbers(std::size_t global, std::size_t mode) const {
  return grid_.quantum_numbers(local_index(global, mode));
}

double DiscretizedState::norm() const {
  // Fixed summation order keeps reports reproducible.
  double sum = 0.0;
  for (const auto &a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

DiscretizedState DiscretizedState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero vector");
  DiscretizedState out = *this;
  for (auto &a : out.amplitudes_) a /= n;
  return out;
}

// --- preparation ---------------------------------------------------------------

DiscretizedState prepare_momentum_state(const GridSpec &grid) {
  const double amp = 1.0 / std::sqrt(static_cast<double>(grid.mode_dim()));
  return DiscretizedState(grid, 1, std::vector<Complex>(grid.mode_dim(), Complex{amp, 0.0}));
}

DiscretizedState prepare_gkp_state(const GridSpec &grid, Complex c0, Complex c1) {
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  if (std::abs(norm - 1.0) > 1e-9) throw DomainError("GKP amplitudes must satisfy |c0|^2 + |c1|^2 = 1");
  DiscretizedState out(grid, 1);
  const int zero = grid.zero_sample_index();
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.n()));
  for (int ell = 0; ell < 2; ++ell) {
    for (int m = 0; m < grid.n(); ++m) {
      out.amplitudes()[grid.local_index(ell, m, zero)] = (ell == 0 ? c0 : c1) * scale / norm;
    }
  }
  return out;
}

DiscretizedState prepare_resource(const GridSpec &grid, const NodeSpec &spec) {
  switch (spec.type) {
    case CvType::Momentum:
      return prepare_momentum_state(grid);
    case CvType::GkpPlus: {
      const QubitAmplitudes p = QubitAmplitudes::plus();
      return prepare_gkp_state(grid, p.c0, p.c1);
    }
    case CvType::GkpLabeled: {
      const QubitAmplitudes a = spec.amplitudes.normalized();
      return prepare_gkp_state(grid, a.c0, a.c1);
    }
  }
  throw DomainError("unknown cv type");
}

DiscretizedState tensor(const DiscretizedState &a, const DiscretizedState &b) {
  if (!(a.grid() == b.grid())) throw DomainError("tensor product needs matching grids");
  std::vector<Complex> amps;
  amps.reserve(a.size() * b.size());
  for (const auto &x : a.amplitudes()) {
    for (const auto &y : b.amplitudes()) amps.push_back(x * y);
  }
  return DiscretizedState(a.grid(), a.n_modes() + b.n_modes(), std::move(amps));
}

DiscretizedState product_state(const GridSpec &grid, const std::vector<NodeSpec> &specs) {
  DiscretizedState out(grid, 0, {Complex{1.0, 0.0}});
  for (const auto &spec : specs) out = tensor(out, prepare_resource(grid, spec));
  return out;
}

// --- gates -----------------------------------------------------------------------

DiscretizedState apply_cz(const DiscretizedState &state, std::size_t mode_i, std::size_t mode_j, double g) {
  check_mode(state, mode_i);
  check_mode(state, mode_j);
  if (mode_i == mode_j) throw DomainError("controlled-Z needs two distinct modes");
  const std::vector<double> x = local_positions(state.grid());
  return apply_diagonal(state, [&](std::size_t idx) {
    return g * x[state.local_index(idx, mode_i)] * x[state.local_index(idx, mode_j)];
  });
}

DiscretizedState apply_cz_matrix(const DiscretizedState &state, const AdjacencyMatrix &weights) {
  if (weights.size() != state.n_modes()) throw DomainError("weight matrix size does not match the state");
  const std::vector<double> x = local_positions(state.grid());
  const auto edges = weights.edges();
  return apply_diagonal(state, [&](std::size_t idx) {
    double theta = 0.0;
    for (const auto &[i, j] : edges) {
      theta += weights(i, j) * x[state.local_index(idx, i)] * x[state.local_index(idx, j)];
    }
    return theta;
  });
}

double factor_eigenvalue(const GridSpec &, const QuantumNumbers &q, OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Logical:
      return static_cast<double>(q.ell);
    case OperatorKind::GaugeBin:
      return static_cast<double>(q.m);
    case OperatorKind::GaugeModular:
      return q.u;
  }
  return 0.0;
}

DiscretizedState apply_term(const DiscretizedState &state, const CouplingTerm &term) {
  check_mode(state, term.a.mode);
  check_mode(state, term.b.mode);
  const GridSpec &grid = state.grid();
  return apply_diagonal(state, [&](std::size_t idx) {
    const double a = factor_eigenvalue(grid, state.quantum_numbers(idx, term.a.mode), term.a.kind);
    const double b = factor_eigenvalue(grid, state.quantum_numbers(idx, term.b.mode), term.b.kind);
    return term.coefficient * a * b;
  });
}

// --- measurement -------------------------------------------------------------------

Projection project_p0(const DiscretizedState &state, std::size_t mode) {
  check_mode(state, mode);
  const std::size_t dim = state.grid().mode_dim();
  const std::size_t low = mode_stride(state, mode);
  const double bra = 1.0 / std::sqrt(static_cast<double>(dim));
  DiscretizedState out(state.grid(), state.n_modes() - 1);
  auto &amps = out.amplitudes();
  for (std::size_t g = 0; g < state.size(); ++g) {
    const std::size_t high = g / (low * dim);
    const std::size_t rest = high * low + g % low;
    amps[rest] += bra * state[g];
  }
  const double n = out.norm();
  return Projection{std::move(out), n};
}

// --- reduced states ------------------------------------------------------------------

Eigen::MatrixXcd reduced_density(const DiscretizedState &state, const std::vector<Factor> &keep) {
  if (keep.empty()) throw DomainError("reduced_density needs at least one factor");
  const GridSpec &grid = state.grid();
  for (std::size_t i = 0; i < keep.size(); ++i) {
    check_mode(state, keep[i].mode);
    for (std::size_t j = 0; j < i; ++j) {
      if (keep[i] == keep[j]) throw DomainError("factor listed twice in reduced_density");
    }
  }
  std::vector<Factor> traced;
  for (std::size_t m = 0; m < state.n_modes(); ++m) {
    for (auto kind : {OperatorKind::Logical, OperatorKind::GaugeBin, OperatorKind::GaugeModular}) {
      const Factor f{m, kind};
      if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);
    }
  }
  auto radix_index = [&](std::size_t g, const std::vector<Factor> &factors) {
    std::size_t idx = 0;
    for (const Factor &f : factors) idx = idx * factor_dim(grid, f.kind) + static_cast<std::size_t>(state.factor_index(g, f));
    return idx;
  };
  std::size_t dim_keep = 1;
  for (const Factor &f : keep) dim_keep *= factor_dim(grid, f.kind);
  const std::size_t dim_traced = state.size() / dim_keep;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_keep),
                                              static_cast<Eigen::Index>(dim_traced));
  for (std::size_t g = 0; g < state.size(); ++g) {
    m(static_cast<Eigen::Index>(radix_index(g, keep)), static_cast<Eigen::Index>(radix_index(g, traced))) = state[g];
  }
  Eigen::MatrixXcd rho = m * m.adjoint();
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw DomainError("reduced_density of the zero vector");
  return rho / tr;
}

Eigen::MatrixXcd logical_density(const DiscretizedState &state, const std::vector<std::size_t> &modes) {
  std::vector<Factor> keep;
  for (std::size_t m : modes) keep.push_back({m, OperatorKind::Logical});
  return reduced_density(state, keep);
}

double purity(const Eigen::MatrixXcd &rho) { return (rho * rho).trace().real(); }

double trace_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
  if (a.size() != b.size()) throw DomainError("fidelity needs matching dimensions");
  return std::norm(a.dot(b));
}

double fidelity(const Eigen::VectorXcd &psi, const Eigen::MatrixXcd &rho) {
  if (psi.size() != rho.rows()) throw DomainError("fidelity needs matching dimensions");
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double fidelity(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("fidelity needs matching dimensions");
  const Eigen::MatrixXcd sa = psd_sqrt(a);
  const Eigen::MatrixXcd inner = sa * b * sa;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (inner + inner.adjoint()));
  const double root_trace = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

double fidelity(const DiscretizedState &a, const DiscretizedState &b) {
  if (a.size() != b.size()) throw DomainError("fidelity needs matching dimensions");
  Complex dot{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) dot += std::conj(a[i]) * b[i];
  return std::norm(dot) / (std::norm(a.norm()) * std::norm(b.norm()));
}

double connected_correlator(const DiscretizedState &state, const Factor &a, const Factor &b) {
  check_mode(state, a.mode);
  check_mode(state, b.mode);
  const GridSpec &grid = state.grid();
  double total = 0.0, ea = 0.0, eb = 0.0, eab = 0.0;
  for (std::size_t g = 0; g < state.size(); ++g) {
    const double p = std::norm(state[g]);
    if (p == 0.0) continue;
    const double va = factor_eigenvalue(grid, state.quantum_numbers(g, a.mode), a.kind);
    const double vb = factor_eigenvalue(grid, state.quantum_numbers(g, b.mode), b.kind);
    total += p;
    ea += p * va;
    eb += p * vb;
    eab += p * va * vb;
  }
  if (!(total > 0.0)) throw DomainError("correlator of the zero vector");
  return eab / total - (ea / total) * (eb / total);
}

double phase_coupling(const DiscretizedState &state, const Factor &a, const Factor &b, double support) {
  check_mode(state, a.mode);
  check_mode(state, b.mode);
  if (a == b) throw DomainError("phase_coupling needs two different factors");
  const std::size_t sa = factor_stride(state, a);
  const std::size_t sb = factor_stride(state, b);
  const int da = static_cast<int>(factor_dim(state.grid(), a.kind));
  const int db = static_cast<int>(factor_dim(state.grid(), b.kind));
  double peak = 0.0;
  for (const auto &amp : state.amplitudes()) peak = std::max(peak, std::abs(amp));
  const double floor = support * peak;

  double worst = 0.0;
  for (std::size_t g = 0; g < state.size(); ++g) {
    const int ia = state.factor_index(g, a);
    const int ib = state.factor_index(g, b);
    const Complex z00 = state[g];
    if (std::abs(z00) <= floor) continue;
    for (int ja = ia + 1; ja < da; ++ja) {
      const Complex z10 = state[g + (ja - ia) * sa];
      if (std::abs(z10) <= floor) continue;
      for (int jb = ib + 1; jb < db; ++jb) {
        const Complex z01 = state[g + (jb - ib) * sb];
        const Complex z11 = state[g + (ja - ia) * sa + (jb - ib) * sb];
        if (std::abs(z01) <= floor || std::abs(z11) <= floor) continue;
        worst = std::max(worst, std::abs(std::arg(z00 * std::conj(z10) * std::conj(z01) * z11)));
      }
    }
  }
  return worst;
}

double max_amplitude_deviation(const DiscretizedState &state, const DiscretizedState &reference) {
  if (state.size() != reference.size()) throw DomainError("amplitude comparison needs matching sizes");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < reference.size(); ++i) {
    if (std::abs(reference[i]) > std::abs(reference[pivot])) pivot = i;
  }
  Complex align{1.0, 0.0};
  if (std::abs(state[pivot]) > 0.0 && std::abs(reference[pivot]) > 0.0) {
    const Complex ratio = reference[pivot] / state[pivot];
    align = ratio / std::abs(ratio);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) worst = std::max(worst, std::abs(state[i] * align - reference[i]));
  return worst;
}

// --- binary dump ---------------------------------------------------------------------

namespace {

constexpr std::array<char, 4> kMagic = {'H', 'C', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream &out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream &in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw ParseError("binary dump", "truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_binary(std::ostream &out, const DiscretizedState &state) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(state.grid().n()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(state.n_modes()));
  put_le<double>(out, state.grid().alpha().value());
  for (const auto &a : state.amplitudes()) {
    put_le<double>(out, a.real());
    put_le<double>(out, a.imag());
  }
}

DiscretizedState read_binary(std::istream &in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError("binary dump", "bad magic");
  }
  if (get_le<std::uint32_t>(in) != kVersion) throw ParseError("binary dump", "unsupported version");
  const auto n = get_le<std::uint32_t>(in);
  const auto n_modes = get_le<std::uint32_t>(in);
  const auto alpha = get_le<double>(in);
  const GridSpec grid(static_cast<int>(n), BinSize(alpha));
  std::vector<Complex> amps(ipow(grid.mode_dim(), n_modes));
  for (auto &a : amps) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    a = Complex{re, im};
  }
  return DiscretizedState(grid, n_modes, std::move(amps));
}

}  // namespace hiddencluster::oracle
