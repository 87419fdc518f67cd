#pragma once

#include "netshift/graph.hpp"
#include "netshift/types.hpp"

#include <cstdint>
#include <utility>

namespace netshift {

// Controls for the spectral routines. Matrices with n <= dense_cutoff use a
// full dense eigendecomposition; larger ones use an iterative Krylov solver
// for the extremal eigenpairs. Both routes agree to solver tolerance, so the
// cutoff is a speed knob, not a semantics knob.
struct EmbedOptions {
  Index dense_cutoff = 4096;
  Index max_iter = 0;  // 0 picks a size-dependent default
  double tol = 1e-10;
  std::uint64_t lanczos_seed = 0x5eed;
};

// Adjacency spectral embedding. Columns of U (and entries of lambda) keep the
// positive eigenvalues first in descending order, then the negative ones by
// descending magnitude, matching the +1/-1 layout of metric_diag(sig).
// X = U * |lambda|^{1/2}.
struct Embedding {
  Matd U;
  Vecd lambda;
  Matd X;
  Signature sig;
};

// Leading k eigenpairs of a symmetric matrix by descending |lambda|.
// Eigenvector columns carry the canonical sign convention so repeated runs
// and both solver routes return identical output.
std::pair<Vecd, Matd> spectrum_by_magnitude(const Matd& A, Index k,
                                            const EmbedOptions& options = {});

// Dimension-d embedding with the signature inferred from the signs of the d
// leading-by-magnitude eigenvalues.
Embedding embed_matrix(const Matd& A, Index d, const EmbedOptions& options = {});
Embedding embed(const Graph& g, Index d, const EmbedOptions& options = {});

// Embedding with an explicitly requested signature: the sig.d_plus
// algebraically largest eigenpairs plus the sig.d_minus most negative ones.
// Throws NumericalError (reporting the available counts) when the spectrum
// has fewer eigenvalues of a required sign.
Embedding embed_matrix(const Matd& A, Signature sig, const EmbedOptions& options = {});
Embedding embed(const Graph& g, Signature sig, const EmbedOptions& options = {});

// Elbow selection on a nonincreasing positive profile (typically the leading
// singular or eigenvalue magnitudes): the split point in [1, max_d]
// maximising the shared-variance Gaussian profile likelihood. Ties resolve to
// the smallest split.
Index select_dimension(const Vecd& values, Index max_d);

}  // namespace netshift
