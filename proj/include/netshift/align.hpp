#pragma once

#include "netshift/types.hpp"

namespace netshift {

enum class AlignKind { orthogonal, indefinite_avg, rectangular };

// A linear map W carrying network-1 latent coordinates onto network-2
// coordinates, fitted on a set of trusted rows. kind records which estimator
// produced it: exact orthogonal Procrustes, the averaged least-squares
// relaxation for indefinite metrics, or plain least squares when the two
// sides have different widths. seeds is filled by pipeline callers that know
// vertex identities; the fitting routines below only see the rows.
struct AlignmentMap {
  Matd W;  // d1 x d2
  AlignKind kind = AlignKind::orthogonal;
  IndexVec seeds;
  // Largest column-space condition number seen among the seed blocks. The
  // relaxed estimators have no reconciliation rule when the two least-squares
  // solutions disagree, so ill conditioning is surfaced instead of patched;
  // callers may warn when this exceeds ~1e8.
  double condition = 1.0;
};

// Orthogonal Procrustes fit: W = U V^T from the SVD of X1_S^T X2_S, the
// Frobenius-optimal rotation/reflection taking X1_S onto X2_S.
// Throws DegenerateSeedsError when that product is numerically rank
// deficient (the minimizer is not unique).
AlignmentMap procrustes(const Matd& X1_S, const Matd& X2_S);

// Averaged least-squares relaxation for an indefinite metric: the forward
// solution pinv(X1_S) X2_S and the metric-twisted reverse solution are
// averaged and returned as-is, not projected onto the indefinite orthogonal
// group.
AlignmentMap indefinite_align(const Matd& X1_S, const Matd& X2_S, Signature sig);

// Least-squares map between sides of different widths; requires
// |S| >= d2 >= d1 and a full-column-rank X1_S.
AlignmentMap rectangular_align(const Matd& X1_S, const Matd& X2_S);

// Picks the estimator the way the pipelines do: rectangular when the widths
// differ, the indefinite average when the shared signature has a negative
// part, plain Procrustes otherwise.
AlignmentMap align_seed_blocks(const Matd& X1_S, const Matd& X2_S, Signature sig1,
                               Signature sig2);

}  // namespace netshift
