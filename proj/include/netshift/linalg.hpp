#pragma once

#include "netshift/errors.hpp"
#include "netshift/types.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

namespace netshift {

// Fix eigenvector signs deterministically: per column, the entry of largest
// magnitude is made positive (ties resolved to the lowest row index by the
// strict comparison below). Eigensolvers leave the sign free; pinning it makes
// every downstream artifact reproducible.
inline void canonical_signs(Matd& U) {
  for (Index j = 0; j < U.cols(); ++j) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < U.rows(); ++i) {
      const double a = std::abs(U(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (U(imax, j) < 0.0) U.col(j) = -U.col(j);
  }
}

// Moore-Penrose pseudoinverse via SVD with a relative singular-value cutoff.
template <typename Derived>
Matd pinv(const Eigen::MatrixBase<Derived>& M, double rcond = 1e-12) {
  Eigen::JacobiSVD<Matd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vecd& s = svd.singularValues();
  if (s.size() == 0) return Matd::Zero(M.cols(), M.rows());
  const double cut = rcond * s(0);
  Vecd inv = Vecd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

template <typename Derived>
Matd clip01(const Eigen::MatrixBase<Derived>& M) {
  return M.array().max(0.0).min(1.0).matrix();
}

// Numerical rank against a relative threshold on singular values.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& M, double rcond = 1e-12) {
  Eigen::JacobiSVD<Matd> svd(M);
  const Vecd& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rcond * s(0)) ++r;
  return r;
}

}  // namespace netshift
