// Copyright 2026 The TGSC Authors.
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

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "tgsc/error.hpp"

namespace tgsc {

enum class EigenMethod { kAuto, kDense, kLanczos };

struct EigenOptions {
  EigenMethod method = EigenMethod::kAuto;
  int dense_threshold = 512;  // kAuto: dense at or below this dimension
  double tolerance = 1e-10;   // Lanczos residual target, relative to max(1, |lambda|)
  double accept = 1e-8;       // residual accepted on return
  int max_krylov = 2000;      // cap on the Krylov basis per eigenpair
  std::uint64_t seed = 0x5eed;
};

/// Eigenpairs in ascending order; columns of `vectors` are unit-norm.
template <typename Scalar = double>
struct EigenPairs {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> residuals;  // ||A x - lambda x||_2
  EigenMethod method_used = EigenMethod::kDense;

  int count() const { return static_cast<int>(values.size()); }
};

/// Flips x so its largest-magnitude entry is positive (first such index on ties).
template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>&& x) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  }
  if (x.size() > 0 && x[best] < 0) x = -x;
}

template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>& x) {
  fix_sign(std::move(x));
}

namespace detail {

template <typename Scalar, typename MatrixType>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> residuals_of(const MatrixType& a, const EigenPairs<Scalar>& p) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r(p.count());
  for (int j = 0; j < p.count(); ++j) {
    r[j] = (a * p.vectors.col(j) - p.values[j] * p.vectors.col(j)).norm();
  }
  return r;
}

template <typename Scalar, typename MatrixType>
EigenPairs<Scalar> dense_smallest(const MatrixType& a, int k) {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Dense d = Dense(a);
  Eigen::SelfAdjointEigenSolver<Dense> es(d);
  if (es.info() != Eigen::Success) {
    throw NonConvergence("dense eigensolver failed", std::numeric_limits<double>::infinity());
  }
  EigenPairs<Scalar> out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  out.method_used = EigenMethod::kDense;
  return out;
}

// Lanczos with full reorthogonalization, one eigenpair per run; earlier
// pairs are deflated by orthogonalizing every Krylov vector against them.
template <typename Scalar, typename MatrixType>
EigenPairs<Scalar> lanczos_smallest(const MatrixType& a, int k, const EigenOptions& opt) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  Dense locked(n, k);
  Vector locked_values(k);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  auto deflate = [&](Vector& w, int nlocked) {
    if (nlocked == 0) return;
    for (int pass = 0; pass < 2; ++pass) w -= locked.leftCols(nlocked) * (locked.leftCols(nlocked).transpose() * w);
  };

  for (int j = 0; j < k; ++j) {
    const Eigen::Index room = n - j;
    const Eigen::Index m_cap = std::min<Eigen::Index>(room, opt.max_krylov);
    Dense basis(n, std::min<Eigen::Index>(m_cap + 1, n));
    Vector alpha(m_cap), beta(m_cap);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = static_cast<Scalar>(uni(rng));
    deflate(v, j);
    v.normalize();
    basis.col(0) = v;

    Scalar theta = 0;
    Vector ritz;
    double best_estimate = std::numeric_limits<double>::infinity();
    bool converged = false;
    Eigen::Index m = 0;
    Eigen::Index next_check = std::min<Eigen::Index>(20, m_cap);
    for (; m < m_cap; ++m) {
      Vector w = a * basis.col(m);
      alpha[m] = basis.col(m).dot(w);
      w -= alpha[m] * basis.col(m);
      if (m > 0) w -= beta[m - 1] * basis.col(m - 1);
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
        deflate(w, j);
      }
      beta[m] = w.norm();
      const bool exhausted = beta[m] <= std::numeric_limits<Scalar>::epsilon() * 64 || m + 1 == m_cap;
      if (m + 1 >= next_check || exhausted) {
        Eigen::SelfAdjointEigenSolver<Dense> tri;
        Vector diag = alpha.head(m + 1);
        Vector sub = beta.head(m);
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        theta = tri.eigenvalues()[0];
        ritz = tri.eigenvectors().col(0);
        const double estimate = std::abs(static_cast<double>(beta[m] * ritz[m]));
        best_estimate = std::min(best_estimate, estimate);
        if (estimate <= opt.tolerance * std::max(1.0, std::abs(static_cast<double>(theta))) || exhausted) {
          converged = estimate <= opt.accept * std::max(1.0, std::abs(static_cast<double>(theta))) || exhausted;
          ++m;
          break;
        }
        next_check = std::max<Eigen::Index>(m + 1 + 10, (m + 1) * 5 / 4);
      }
      if (m + 1 < basis.cols()) basis.col(m + 1) = w / beta[m];
    }
    if (!converged) {
      throw NonConvergence("Lanczos did not converge for eigenpair " + std::to_string(j), best_estimate);
    }
    Vector x = basis.leftCols(m) * ritz.head(m);
    deflate(x, j);
    x.normalize();
    locked.col(j) = x;
    locked_values[j] = x.dot(a * x);
  }

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int p, int q) { return locked_values[p] < locked_values[q]; });
  EigenPairs<Scalar> out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (int i = 0; i < k; ++i) {
    out.values[i] = locked_values[idx[i]];
    out.vectors.col(i) = locked.col(idx[i]);
  }
  out.method_used = EigenMethod::kLanczos;
  return out;
}

}  // namespace detail

/// The k smallest eigenpairs of a symmetric matrix. Dense below
/// `dense_threshold`, Lanczos above it. Signs follow fix_sign().
template <typename Scalar = double, typename MatrixType>
EigenPairs<Scalar> smallest_eigenpairs(const MatrixType& a, int k, const EigenOptions& opt = {}) {
  const auto n = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) throw Error(ErrorCode::kInvalidArgument, "eigensolver: matrix is not square");
  if (k < 0 || k > n) throw Error(ErrorCode::kInvalidArgument, "eigensolver: k exceeds the dimension");
  EigenMethod method = opt.method;
  if (method == EigenMethod::kAuto) method = n <= opt.dense_threshold ? EigenMethod::kDense : EigenMethod::kLanczos;
  EigenPairs<Scalar> out = method == EigenMethod::kDense ? detail::dense_smallest<Scalar>(a, k)
                                                         : detail::lanczos_smallest<Scalar>(a, k, opt);
  for (int j = 0; j < k; ++j) fix_sign(out.vectors.col(j));
  out.residuals = detail::residuals_of(a, out);
  for (int j = 0; j < k; ++j) {
    const double bound = opt.accept * std::max(1.0, std::abs(static_cast<double>(out.values[j])));
    if (!(out.residuals[j] <= bound)) {
      throw NonConvergence("eigenpair " + std::to_string(j) + " residual above tolerance",
                           static_cast<double>(out.residuals[j]));
    }
  }
  return out;
}

}  // namespace tgsc
