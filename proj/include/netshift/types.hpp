#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace netshift {

using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Matd = Mat<double>;
using Vecd = Vec<double>;
using BoolMat = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Sorted list of vertex indices (seed sets, kept/rejected sets).
using IndexVec = std::vector<Index>;

// Eigenvalue signature of the latent inner product: d_plus positive
// directions followed by d_minus negative ones. A plain dot product is
// signature (d, 0).
struct Signature {
  Index d_plus = 0;
  Index d_minus = 0;

  Index total() const { return d_plus + d_minus; }
  bool indefinite() const { return d_minus > 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Diagonal of the indefinite metric: d_plus entries +1 then d_minus entries -1.
inline Vecd metric_diag(Signature sig) {
  Vecd m(sig.total());
  m.head(sig.d_plus).setOnes();
  m.tail(sig.d_minus).setConstant(-1.0);
  return m;
}

}  // namespace netshift
