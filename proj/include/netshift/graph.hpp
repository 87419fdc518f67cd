#pragma once

#include "netshift/types.hpp"

#include <cstdint>

namespace netshift {

// Simple undirected graph held as a dense 0/1 adjacency matrix with zero
// diagonal. Dense is deliberate: every consumer immediately feeds the matrix
// to an eigensolver, and the working sizes stay in the low thousands.
struct Graph {
  Matd adj;

  Index n() const { return adj.rows(); }
  Index edge_count() const { return static_cast<Index>(adj.sum() / 2.0); }
};

// Latent positions plus the signature of the inner product that turns them
// into connection probabilities: P = X * diag(+1...,-1...) * X^T.
struct LatentModel {
  Matd X;
  Signature sig;

  Index n() const { return X.rows(); }
  Index dim() const { return X.cols(); }
};

Matd probability_matrix(const LatentModel& model);

// Rejects anything that is not a square, symmetric, hollow 0/1 matrix.
void validate_adjacency(const Matd& adj);

// A paired-network simulation setting: two latent models on the same vertex
// set, the vertices whose positions agree across them (up to W_true), and the
// planted row-wise shifts. Satisfies X2 = X1 * W_true + Y_true exactly, with
// all-zero Y_true rows on the unshifted set.
struct ShiftScenario {
  LatentModel model1;
  LatentModel model2;
  IndexVec unshifted;  // sorted vertex indices
  Matd W_true;         // d1 x d2
  Matd Y_true;         // n x d2

  // Block assignments per network for block-model scenarios (empty otherwise).
  IndexVec blocks1;
  IndexVec blocks2;

  Index n() const { return model1.n(); }
};

// Bernoulli-sample an adjacency matrix from the model's probability matrix.
// Upper-triangle entries are drawn independently in row-major order, then
// mirrored; the diagonal stays zero. Deterministic given rng_seed.
Graph sample_graph(const LatentModel& model, std::uint64_t rng_seed);
Graph sample_graph(const Matd& P, std::uint64_t rng_seed);

// Latent rows with i.i.d. entries sqrt(Uniform(0,1))/sqrt(d); signature (d, 0).
LatentModel make_rdpg_latents(Index n, Index d, std::uint64_t rng_seed);

// Paired RDPG scenario: both networks share the latent rows of the leading
// vertices; the trailing ceil(shift_fraction*n) rows are redrawn
// independently for network 2.
ShiftScenario make_rdpg_scenario(Index n, Index d, double shift_fraction,
                                 std::uint64_t rng_seed);

// Paired block-model scenario from a symmetric block matrix B: block latents
// are scaled eigenfactors of B (so P = Z B Z^T exactly, signature from the
// signs of B's eigenvalues); network-1 assignments are uniform; the trailing
// ceil(shift_fraction*n) vertices are reassigned uniformly to one of the
// other blocks in network 2. W_true is the identity.
ShiftScenario make_sbm_scenario(Index n, const Matd& B, double shift_fraction,
                                std::uint64_t rng_seed);

// Rank-mismatch variant of the block-model scenario: network 1 uses only the
// first two blocks of a 3x3 block matrix (latent dimension 2), network 2 all
// three (latent dimension 3, unless the third block ends up unoccupied).
// Unshifted vertices keep their network-1 assignment.
ShiftScenario make_rank_mismatch_scenario(Index n, const Matd& B, std::uint64_t rng_seed,
                                          double shift_fraction = 0.5);

}  // namespace netshift
