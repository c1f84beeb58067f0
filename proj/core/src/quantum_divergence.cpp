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

#include <algorithm>
#include <cmath>
#include <vector>

#include "thermoforge/divergences.hpp"
#include "thermoforge/error.hpp"
#include "thermoforge/numeric.hpp"

namespace thermoforge {

namespace {

// Eigenvalues at or below this are treated as exact zeros (support cutoff).
constexpr double kZeroEigenvalue = 1e-13;

struct Eig {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

Eig eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw InputError("Hermitian eigendecomposition failed");
  }
  Eig out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    if (out.values(i) <= kZeroEigenvalue) out.values(i) = 0.0;
  }
  return out;
}

// f applied to the nonzero eigenvalues; zero eigenvalues map to zero.
template <typename F>
ComplexMatrix support_function(const Eig& e, F f) {
  Eigen::VectorXd d(e.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    d(i) = e.values(i) > 0.0 ? f(e.values(i)) : 0.0;
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

// Weight of rho outside the support of sigma.
double mass_outside_support(const ComplexMatrix& rho, const Eig& s) {
  double mass = 0.0;
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    if (s.values(j) > 0.0) continue;
    const auto v = s.vectors.col(j);
    mass += (v.adjoint() * rho * v)(0, 0).real();
  }
  return mass;
}

}  // namespace

double quantum_renyi_divergence(const DenseState& rho, const DenseState& sigma,
                                Alpha a) {
  if (rho.dim() != sigma.dim()) {
    throw InputError("quantum_renyi_divergence: dimension mismatch");
  }
  if (!a.is_nonnegative()) {
    throw InputError("quantum_renyi_divergence: alpha must be >= 0");
  }
  const Eig r = eig(rho.matrix());
  const Eig s = eig(sigma.matrix());
  // |<u_i|v_j>|^2
  const Eigen::MatrixXd overlap =
      (r.vectors.adjoint() * s.vectors).cwiseAbs2();
  const bool outside = mass_outside_support(rho.matrix(), s) > tol::kHermitian;

  const double alpha = a.value();
  if (a.kind() == Alpha::Kind::Zero) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < r.values.size(); ++i) {
      if (r.values(i) <= 0.0) continue;
      for (Eigen::Index j = 0; j < s.values.size(); ++j) {
        mass += s.values(j) * overlap(i, j);
      }
    }
    return -safe_log(mass);
  }
  if (a.kind() == Alpha::Kind::Finite && alpha < 1.0) {
    std::vector<double> terms;
    for (Eigen::Index i = 0; i < r.values.size(); ++i) {
      if (r.values(i) <= 0.0) continue;
      for (Eigen::Index j = 0; j < s.values.size(); ++j) {
        if (s.values(j) <= 0.0 || overlap(i, j) <= 0.0) continue;
        terms.push_back(alpha * std::log(r.values(i)) +
                        (1.0 - alpha) * std::log(s.values(j)) +
                        std::log(overlap(i, j)));
      }
    }
    return log_sum_exp(terms) / (alpha - 1.0);
  }
  if (outside) return kInf;
  if (a.kind() == Alpha::Kind::One) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < r.values.size(); ++i) {
      if (r.values(i) <= 0.0) continue;
      d += r.values(i) * std::log(r.values(i));
      for (Eigen::Index j = 0; j < s.values.size(); ++j) {
        if (s.values(j) <= 0.0) continue;
        d -= r.values(i) * overlap(i, j) * std::log(s.values(j));
      }
    }
    return d;
  }
  if (a.kind() == Alpha::Kind::PosInfinity) {
    const ComplexMatrix inv_sqrt =
        support_function(s, [](double x) { return 1.0 / std::sqrt(x); });
    const ComplexMatrix m = inv_sqrt * rho.matrix() * inv_sqrt;
    const Eig e = eig(0.5 * (m + m.adjoint()));
    return safe_log(e.values.maxCoeff());
  }
  const double power = (1.0 - alpha) / (2.0 * alpha);
  const ComplexMatrix side =
      support_function(s, [power](double x) { return std::pow(x, power); });
  const ComplexMatrix m = side * rho.matrix() * side;
  const Eig e = eig(0.5 * (m + m.adjoint()));
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > 0.0) terms.push_back(alpha * std::log(e.values(i)));
  }
  return log_sum_exp(terms) / (alpha - 1.0);
}

}  // namespace thermoforge
