// Copyright 2026 The Thermoforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hamiltonians, bath parameters and state representations for a bipartite
// working system S1 S2 whose halves are coupled to baths at inverse
// temperatures beta1 and beta2.
//
// Product eigenstates |i j> are indexed row-major: index = i * d2 + j.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace thermoforge {

using ComplexMatrix = Eigen::MatrixXcd;

// Spectrum of one subsystem Hamiltonian. Levels are shifted at construction
// so that the lowest one is exactly zero; degeneracy is expressed by
// repetition.
class EnergyLevels {
 public:
  explicit EnergyLevels(std::vector<double> levels);

  std::span<const double> values() const noexcept { return levels_; }
  double operator[](std::size_t i) const { return levels_[i]; }
  std::size_t size() const noexcept { return levels_.size(); }
  // Amount subtracted from the raw input to put the ground level at zero.
  double offset() const noexcept { return offset_; }

  friend bool operator==(const EnergyLevels& a, const EnergyLevels& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<double> levels_;
  double offset_ = 0.0;
};

struct BathPair {
  BathPair(double beta1, double beta2);

  double beta1;
  double beta2;

  friend bool operator==(const BathPair&, const BathPair&) = default;
};

inline constexpr std::size_t kDefaultDimensionCap = 4096;

class EngineSpec {
 public:
  EngineSpec(EnergyLevels h1, EnergyLevels h2, BathPair baths,
             std::size_t dimension_cap = kDefaultDimensionCap);

  const EnergyLevels& h1() const noexcept { return h1_; }
  const EnergyLevels& h2() const noexcept { return h2_; }
  const BathPair& baths() const noexcept { return baths_; }
  std::size_t d1() const noexcept { return h1_.size(); }
  std::size_t d2() const noexcept { return h2_.size(); }
  std::size_t joint_dim() const noexcept { return d1() * d2(); }
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * d2() + j;
  }
  // beta1 * E_i + beta2 * E_j
  double weighted_energy(std::size_t i, std::size_t j) const noexcept {
    return baths_.beta1 * h1_[i] + baths_.beta2 * h2_[j];
  }

  friend bool operator==(const EngineSpec& a, const EngineSpec& b) {
    return a.h1_ == b.h1_ && a.h2_ == b.h2_ && a.baths_ == b.baths_;
  }

 private:
  EnergyLevels h1_;
  EnergyLevels h2_;
  BathPair baths_;
};

// Dimensionless eigenvalues of beta1 H1 (x) 1 + 1 (x) beta2 H2 together with
// the partition of product indices into degenerate blocks.
struct WeightedSpectrum {
  std::vector<double> w;
  std::vector<std::vector<std::size_t>> blocks;  // ascending in w
  std::vector<std::size_t> block_of;             // index -> block id

  std::size_t size() const noexcept { return w.size(); }
};

// Indices are grouped greedily in ascending w; a block never spans more than
// `degeneracy_tol` between its smallest and largest member.
WeightedSpectrum weighted_spectrum(const EngineSpec& spec,
                                   double degeneracy_tol = 1e-9);

struct LocalGibbs {
  std::vector<double> p;
  std::vector<double> log_p;
  double log_z;
};

LocalGibbs local_gibbs(const EnergyLevels& h, double beta);

// The product of the two local Gibbs states ("semi-Gibbs" state).
struct SemiGibbs {
  std::vector<double> q;
  std::vector<double> log_q;
  double log_z1;
  double log_z2;

  double log_z() const noexcept { return log_z1 + log_z2; }
};

SemiGibbs semi_gibbs(const EngineSpec& spec);

// Occupation probabilities of a state that is block-diagonal in the weighted
// energy eigenbasis, in product-index order.
class BlockSpectrum {
 public:
  BlockSpectrum(std::vector<double> p, const EngineSpec& spec);

  std::span<const double> p() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }
  std::size_t size() const noexcept { return p_.size(); }

  // Marginal on S1 (length d1) and S2 (length d2).
  std::vector<double> marginal1(const EngineSpec& spec) const;
  std::vector<double> marginal2(const EngineSpec& spec) const;

  friend bool operator==(const BlockSpectrum&, const BlockSpectrum&) = default;

 private:
  std::vector<double> p_;
};

// Hermitian, positive semidefinite, unit-trace matrix in the product energy
// eigenbasis.
class DenseState {
 public:
  explicit DenseState(ComplexMatrix matrix);
  static DenseState diagonal(std::span<const double> p);
  static DenseState pure(const Eigen::VectorXcd& psi);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }

 private:
  ComplexMatrix matrix_;
};

// sum_b P_b rho P_b over the weighted-energy blocks.
DenseState block_dephase(const DenseState& rho, const WeightedSpectrum& w);

// Largest modulus of an entry coupling two different blocks.
double off_block_magnitude(const DenseState& rho, const WeightedSpectrum& w);

// Spectrum of a block-diagonal state: each degenerate block is diagonalised
// and its eigenvalues are written onto the block's product indices. Throws
// InputError if rho has inter-block coherence above `block_tol`; dephase first
// in that case.
BlockSpectrum block_spectrum(const DenseState& rho, const EngineSpec& spec,
                             double block_tol = 1e-9);

// exp(-i t H_w) rho exp(i t H_w) for the weighted Hamiltonian H_w.
DenseState weighted_time_evolution(const DenseState& rho,
                                   const WeightedSpectrum& w, double t);

}  // namespace thermoforge
