#pragma once

#include "netshift/embedding.hpp"
#include "netshift/errors.hpp"
#include "netshift/graph.hpp"
#include "netshift/pair_filter.hpp"
#include "netshift/shift_test.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace netshift {

// How candidate seed sets are generated: plain uniform size-L subsets, or
// directly inside the feasibility mask (better odds per candidate when the
// unshifted fraction is small or d is large).
enum class SamplingMode { uniform_random, feasible_direct };

struct SeedFreeConfig {
  Index d1 = 0;
  Index d2 = 0;  // 0 means same as d1
  Index L = 0;   // seed set size; 0 means max(d1, d2)
  Index M = 100; // candidate budget
  double alpha = 0.05;        // FDR level of the per-candidate and final tests
  double alpha_tilde = 0.3;   // family level of the pair filter
  std::uint64_t rng_seed = 0;
  SamplingMode sampling = SamplingMode::uniform_random;
  // Nonzero totals pin the embedding signatures; otherwise the plain
  // (d, 0) embedding is used.
  Signature sig1{0, 0};
  Signature sig2{0, 0};
  EmbedOptions embed;
};

struct CandidateRecord {
  IndexVec seeds;
  bool passed_filter = false;
  Index h = 0;  // vertices retained when tested with these seeds; 0 unless scored
};

// Everything the driver decided along the way, for replay and debugging.
struct SeedFreeTrace {
  std::vector<CandidateRecord> candidates;
  Index chosen = -1;            // index into candidates of the winner
  IndexVec expanded_seeds;      // seed set used for the final pass
  bool expansion_fallback = false;  // winner's own seeds reused instead
  SampleDiagnostics sampling;
};

// No candidate survived the feasibility filter (or none could be sampled).
// Carries the trace so callers can see what was tried.
class NoViableCandidateError : public NumericalError {
 public:
  NoViableCandidateError(const std::string& what, SeedFreeTrace trace)
      : NumericalError(what), trace_(std::move(trace)) {}

  const SeedFreeTrace& trace() const { return trace_; }

 private:
  SeedFreeTrace trace_;
};

// Candidate budget guaranteeing at least one all-unshifted size-d set with
// probability q when a p fraction of vertices is unshifted:
// ceil(ln(1-q) / ln(1-p^d)).
Index required_candidates(double p, Index d, double q);

// Seedless pipeline: embed both graphs once, screen M candidate seed sets
// through the pair filter, score each survivor by how many vertices its
// alignment retains, then rerun the seeded test with the winner's retained
// set as the expanded seeds.
std::pair<ShiftReport, SeedFreeTrace> run_seedfree(const Graph& g1, const Graph& g2,
                                                   const SeedFreeConfig& config);

// Same driver on top of already-computed embeddings.
std::pair<ShiftReport, SeedFreeTrace> run_seedfree_embedded(const Embedding& e1,
                                                            const Embedding& e2,
                                                            const SeedFreeConfig& config);

}  // namespace netshift
