#include "netshift/align.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace netshift {

namespace {

void check_rows(const Matd& X1_S, const Matd& X2_S) {
  if (X1_S.rows() == 0 || X1_S.rows() != X2_S.rows())
    throw InputError("seed blocks must be nonempty with matching row counts");
}

// Condition number of a seed block, with rank enforcement.
double block_condition(const Matd& X, const char* which) {
  Eigen::JacobiSVD<Matd> svd(X);
  const Vecd& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smin <= 1e-12 * smax)
    throw DegenerateSeedsError(std::string("seed rows of ") + which +
                               " are numerically rank deficient");
  return smax / smin;
}

}  // namespace

AlignmentMap procrustes(const Matd& X1_S, const Matd& X2_S) {
  check_rows(X1_S, X2_S);
  const Index d = X1_S.cols();
  if (X2_S.cols() != d) throw InputError("procrustes requires equal dimensions on both sides");
  if (X1_S.rows() < d) throw InputError("procrustes needs at least d seed rows");

  const Matd M = X1_S.transpose() * X2_S;
  Eigen::JacobiSVD<Matd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vecd& s = svd.singularValues();
  if (s(d - 1) <= 1e-10 * s(0))
    throw DegenerateSeedsError("seed cross-product is rank deficient, the optimal rotation is not unique");

  AlignmentMap map;
  map.W = svd.matrixU() * svd.matrixV().transpose();
  map.kind = AlignKind::orthogonal;
  map.condition = s(0) / s(d - 1);
  return map;
}

AlignmentMap indefinite_align(const Matd& X1_S, const Matd& X2_S, Signature sig) {
  check_rows(X1_S, X2_S);
  const Index d = sig.total();
  if (X1_S.cols() != d || X2_S.cols() != d)
    throw InputError("indefinite alignment requires both blocks to match the signature dimension");
  if (X1_S.rows() < d) throw InputError("indefinite alignment needs at least d seed rows");

  const double c1 = block_condition(X1_S, "network 1");
  const double c2 = block_condition(X2_S, "network 2");

  const Vecd s = metric_diag(sig);
  const Matd W_L = pinv(X1_S) * X2_S;
  const Matd W_R = (pinv(X2_S * s.asDiagonal()) * (X1_S * s.asDiagonal())).transpose();

  AlignmentMap map;
  map.W = (W_L + W_R) / 2.0;
  map.kind = AlignKind::indefinite_avg;
  map.condition = std::max(c1, c2);
  return map;
}

AlignmentMap rectangular_align(const Matd& X1_S, const Matd& X2_S) {
  check_rows(X1_S, X2_S);
  const Index d1 = X1_S.cols();
  const Index d2 = X2_S.cols();
  if (d1 > d2) throw InputError("rectangular alignment requires d1 <= d2");
  if (X1_S.rows() < d2) throw InputError("rectangular alignment needs at least d2 seed rows");

  AlignmentMap map;
  map.condition = block_condition(X1_S, "network 1");
  map.W = pinv(X1_S) * X2_S;
  map.kind = AlignKind::rectangular;
  return map;
}

AlignmentMap align_seed_blocks(const Matd& X1_S, const Matd& X2_S, Signature sig1,
                               Signature sig2) {
  if (X1_S.cols() != X2_S.cols()) return rectangular_align(X1_S, X2_S);
  if (!(sig1 == sig2))
    throw InputError("cannot align embeddings whose metric signatures disagree");
  if (sig1.indefinite()) return indefinite_align(X1_S, X2_S, sig1);
  return procrustes(X1_S, X2_S);
}

}  // namespace netshift
