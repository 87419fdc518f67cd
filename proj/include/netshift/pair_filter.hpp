#pragma once

#include "netshift/embedding.hpp"
#include "netshift/graph.hpp"
#include "netshift/types.hpp"

#include <cstdint>
#include <vector>

namespace netshift {

// Entrywise screening table used to reject candidate seed sets that straddle
// a shifted vertex. Delta_hat holds estimated probability differences,
// Upsilon_hat their variance proxy (floored away from zero so the ratio is
// always defined), Ttilde the standardized differences, and feasible the mask
// |Ttilde| <= threshold. All five pieces are symmetric by construction.
struct FilterStats {
  Matd Delta_hat;
  Matd Upsilon_hat;
  Matd Ttilde;
  double threshold = 0.0;
  BoolMat feasible;  // empty until a threshold has been chosen
};

// Outcome notes from sample_feasible_candidates. restarts counts abandoned
// growth attempts (dead ends and duplicate sets both consume one).
struct SampleDiagnostics {
  Index restarts = 0;
  bool budget_exhausted = false;
  bool no_feasible_start = false;
};

// Variance proxy for the entrywise difference of the two estimated
// probability matrices, without the flooring. Off-diagonal entries combine
// the two per-vertex projection-variance diagonals with a cross term; the
// diagonal is 4x the own-vertex value. Runs in O(n^2 d^2) by contracting
// through d^2-dimensional row features instead of forming any n x n
// projector.
Matd upsilon_hat(const Embedding& e1, const Embedding& e2);

// Single entry of upsilon_hat in O(n d^2) time, for harnesses that follow a
// handful of pairs across many replicates.
double upsilon_hat_entry(const Embedding& e1, const Embedding& e2, Index k, Index l);

// True-parameter twin of upsilon_hat evaluated from scenario latents; used to
// validate the plug-in version in simulations.
Matd upsilon_true(const ShiftScenario& scenario);

// Delta_hat, floored Upsilon_hat, and Ttilde. The threshold and feasibility
// mask are left unset; filter_stats fills them.
FilterStats ttilde(const Embedding& e1, const Embedding& e2);

// Standardized difference for one pair, matching ttilde(...).Ttilde(k, l).
double ttilde_entry(const Embedding& e1, const Embedding& e2, Index k, Index l);

// Upper alpha_B/2 standard-normal quantile with alpha_B = alpha_tilde
// divided by the L(L+1)/2 pairs a size-L seed set exposes.
double bonferroni_threshold(Index L, double alpha_tilde);

// Complete screening table for seed sets of size L at filter level
// alpha_tilde.
FilterStats filter_stats(const Embedding& e1, const Embedding& e2, Index L,
                         double alpha_tilde);

// True iff every pair drawn from S, diagonal included, is feasible.
bool candidate_passes(const FilterStats& stats, const IndexVec& S);

// Greedy sampler of up to M distinct size-L vertex sets that lie entirely
// inside the feasibility mask: start at a random vertex whose diagonal entry
// is feasible, repeatedly extend by a uniform choice among the vertices
// feasible with every current member, restart on dead ends. Returns fewer
// than M sets once max_restarts (default 50*M when 0) is exhausted, and an
// empty list when no vertex can start a set.
std::vector<IndexVec> sample_feasible_candidates(const FilterStats& stats, Index L, Index M,
                                                 std::uint64_t rng_seed,
                                                 Index max_restarts = 0,
                                                 SampleDiagnostics* diag = nullptr);

}  // namespace netshift
