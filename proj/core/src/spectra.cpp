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

#include "thermoforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "thermoforge/error.hpp"
#include "thermoforge/numeric.hpp"

namespace thermoforge {

EnergyLevels::EnergyLevels(std::vector<double> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw InputError("energy levels must be non-empty");
  for (double e : levels_) {
    if (!std::isfinite(e)) throw InputError("energy levels must be finite");
  }
  offset_ = *std::min_element(levels_.begin(), levels_.end());
  for (double& e : levels_) e -= offset_;
}

BathPair::BathPair(double b1, double b2) : beta1(b1), beta2(b2) {
  if (!(std::isfinite(b1) && b1 > 0.0) || !(std::isfinite(b2) && b2 > 0.0)) {
    throw InputError("inverse temperatures must be finite and positive");
  }
}

EngineSpec::EngineSpec(EnergyLevels h1, EnergyLevels h2, BathPair baths,
                       std::size_t dimension_cap)
    : h1_(std::move(h1)), h2_(std::move(h2)), baths_(baths) {
  if (joint_dim() > dimension_cap) {
    throw InputError("joint dimension " + std::to_string(joint_dim()) +
                     " exceeds cap " + std::to_string(dimension_cap));
  }
}

WeightedSpectrum weighted_spectrum(const EngineSpec& spec,
                                   double degeneracy_tol) {
  WeightedSpectrum out;
  const std::size_t n = spec.joint_dim();
  out.w.resize(n);
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      out.w[spec.index(i, j)] = spec.weighted_energy(i, j);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return out.w[a] < out.w[b];
                   });
  out.block_of.assign(n, 0);
  double block_start = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = order[k];
    if (k == 0 || out.w[idx] - block_start > degeneracy_tol) {
      out.blocks.emplace_back();
      block_start = out.w[idx];
    }
    out.blocks.back().push_back(idx);
    out.block_of[idx] = out.blocks.size() - 1;
  }
  for (auto& block : out.blocks) std::sort(block.begin(), block.end());
  return out;
}

LocalGibbs local_gibbs(const EnergyLevels& h, double beta) {
  LocalGibbs g;
  std::vector<double> exponents(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) exponents[i] = -beta * h[i];
  g.log_z = log_sum_exp(exponents);
  g.log_p.resize(h.size());
  g.p.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    g.log_p[i] = exponents[i] - g.log_z;
    g.p[i] = std::exp(g.log_p[i]);
  }
  return g;
}

SemiGibbs semi_gibbs(const EngineSpec& spec) {
  const LocalGibbs g1 = local_gibbs(spec.h1(), spec.baths().beta1);
  const LocalGibbs g2 = local_gibbs(spec.h2(), spec.baths().beta2);
  SemiGibbs s;
  s.log_z1 = g1.log_z;
  s.log_z2 = g2.log_z;
  s.q.resize(spec.joint_dim());
  s.log_q.resize(spec.joint_dim());
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) {
      const std::size_t k = spec.index(i, j);
      s.q[k] = g1.p[i] * g2.p[j];
      s.log_q[k] = g1.log_p[i] + g2.log_p[j];
    }
  }
  return s;
}

BlockSpectrum::BlockSpectrum(std::vector<double> p, const EngineSpec& spec)
    : p_(std::move(p)) {
  if (p_.size() != spec.joint_dim()) {
    throw InputError("state has " + std::to_string(p_.size()) +
                     " entries, spec expects " +
                     std::to_string(spec.joint_dim()));
  }
  require_distribution(p_, tol::kProbabilitySum, "block spectrum");
}

std::vector<double> BlockSpectrum::marginal1(const EngineSpec& spec) const {
  std::vector<double> m(spec.d1(), 0.0);
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) m[i] += p_[spec.index(i, j)];
  }
  return m;
}

std::vector<double> BlockSpectrum::marginal2(const EngineSpec& spec) const {
  std::vector<double> m(spec.d2(), 0.0);
  for (std::size_t i = 0; i < spec.d1(); ++i) {
    for (std::size_t j = 0; j < spec.d2(); ++j) m[j] += p_[spec.index(i, j)];
  }
  return m;
}

DenseState::DenseState(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw InputError("density matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) throw InputError("density matrix must be finite");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::kHermitian) {
    throw InputError("density matrix is not Hermitian (deviation " +
                     std::to_string(asym) + ")");
  }
  const std::complex<double> tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol::kHermitian) {
    throw InputError("density matrix trace is not one");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_,
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw InputError("density matrix eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() < -tol::kHermitian) {
    throw InputError("density matrix has a negative eigenvalue");
  }
}

DenseState DenseState::diagonal(std::span<const double> p) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                        static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
  }
  return DenseState(std::move(m));
}

DenseState DenseState::pure(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd v = psi / psi.norm();
  return DenseState(v * v.adjoint());
}

namespace {

void require_matching(const DenseState& rho, const WeightedSpectrum& w) {
  if (rho.dim() != w.size()) {
    throw InputError("state dimension " + std::to_string(rho.dim()) +
                     " does not match weighted spectrum size " +
                     std::to_string(w.size()));
  }
}

}  // namespace

DenseState block_dephase(const DenseState& rho, const WeightedSpectrum& w) {
  require_matching(rho, w);
  ComplexMatrix out = rho.matrix();
  const auto n = static_cast<Eigen::Index>(w.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (w.block_of[static_cast<std::size_t>(r)] !=
          w.block_of[static_cast<std::size_t>(c)]) {
        out(r, c) = 0.0;
      }
    }
  }
  return DenseState(std::move(out));
}

double off_block_magnitude(const DenseState& rho, const WeightedSpectrum& w) {
  require_matching(rho, w);
  double worst = 0.0;
  const auto n = static_cast<Eigen::Index>(w.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (w.block_of[static_cast<std::size_t>(r)] !=
          w.block_of[static_cast<std::size_t>(c)]) {
        worst = std::max(worst, std::abs(rho.matrix()(r, c)));
      }
    }
  }
  return worst;
}

BlockSpectrum block_spectrum(const DenseState& rho, const EngineSpec& spec,
                             double block_tol) {
  const WeightedSpectrum w = weighted_spectrum(spec);
  const double coherence = off_block_magnitude(rho, w);
  if (coherence > block_tol) {
    throw InputError("state has coherence " + std::to_string(coherence) +
                     " between weighted-energy blocks; dephase it first");
  }
  std::vector<double> p(w.size(), 0.0);
  for (const auto& block : w.blocks) {
    const auto m = static_cast<Eigen::Index>(block.size());
    if (m == 1) {
      const auto k = static_cast<Eigen::Index>(block.front());
      p[block.front()] = rho.matrix()(k, k).real();
      continue;
    }
    ComplexMatrix sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        sub(a, b) = rho.matrix()(static_cast<Eigen::Index>(block[a]),
                                 static_cast<Eigen::Index>(block[b]));
      }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sub,
                                                    Eigen::EigenvaluesOnly);
    // Eigen returns ascending eigenvalues; write them largest first so that a
    // diagonal block maps back onto itself when already sorted.
    for (Eigen::Index a = 0; a < m; ++a) {
      p[block[a]] = es.eigenvalues()(m - 1 - a);
    }
  }
  for (double& x : p) x = std::max(x, 0.0);
  const double total = sum(p);
  for (double& x : p) x /= total;
  return BlockSpectrum(std::move(p), spec);
}

DenseState weighted_time_evolution(const DenseState& rho,
                                   const WeightedSpectrum& w, double t) {
  require_matching(rho, w);
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::VectorXcd phase(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phase(k) = std::polar(1.0, -t * w.w[static_cast<std::size_t>(k)]);
  }
  ComplexMatrix out = phase.asDiagonal() * rho.matrix() *
                      phase.conjugate().asDiagonal();
  // Restore exact Hermiticity lost to rounding.
  out = 0.5 * (out + out.adjoint()).eval();
  return DenseState(std::move(out));
}

}  // namespace thermoforge
