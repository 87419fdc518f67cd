#include "netshift/seedfree.hpp"

#include "netshift/parallel.hpp"
#include "netshift/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace netshift {

namespace {

struct ResolvedConfig {
  Index L = 0;
  Index d_max = 0;
};

ResolvedConfig resolve(const SeedFreeConfig& c, Index d1, Index d2, Index n) {
  if (d1 < 1 || d2 < 1) throw InputError("embedding dimensions must be at least 1");
  ResolvedConfig r;
  r.d_max = std::max(d1, d2);
  r.L = c.L > 0 ? c.L : r.d_max;
  if (r.L < r.d_max)
    throw InputError("seed set size must be at least the embedding dimension");
  if (r.L > n) throw InputError("seed set size exceeds the vertex count");
  if (c.M < 1) throw InputError("candidate budget must be at least 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw InputError("alpha must lie in (0,1)");
  if (!(c.alpha_tilde > 0.0 && c.alpha_tilde < 1.0))
    throw InputError("alpha_tilde must lie in (0,1)");
  return r;
}

// Uniform size-L subsets, deduplicated; duplicates burn from the same retry
// budget the feasible sampler uses.
std::vector<IndexVec> uniform_candidates(Index n, Index L, Index M, std::uint64_t seed,
                                         SampleDiagnostics& dg) {
  Rng rng(seed);
  std::set<IndexVec> seen;
  std::vector<IndexVec> out;
  const Index max_restarts = 50 * M;
  while (static_cast<Index>(out.size()) < M) {
    IndexVec s = rng.subset(n, L);
    if (seen.insert(s).second) {
      out.push_back(std::move(s));
      continue;
    }
    if (++dg.restarts > max_restarts) {
      dg.budget_exhausted = true;
      break;
    }
  }
  return out;
}

ShiftReport score_with_seeds(const Embedding& e1, const Embedding& e2,
                             const CovarianceCores& cores, const IndexVec& seeds,
                             double alpha) {
  Matd B1(static_cast<Index>(seeds.size()), e1.X.cols());
  Matd B2(static_cast<Index>(seeds.size()), e2.X.cols());
  for (Index i = 0; i < B1.rows(); ++i) {
    B1.row(i) = e1.X.row(seeds[static_cast<std::size_t>(i)]);
    B2.row(i) = e2.X.row(seeds[static_cast<std::size_t>(i)]);
  }
  AlignmentMap map = align_seed_blocks(B1, B2, e1.sig, e2.sig);
  map.seeds = seeds;
  return test_with_alignment(e1, e2, cores, map, alpha);
}

}  // namespace

Index required_candidates(double p, Index d, double q) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("unshifted fraction must lie in (0,1)");
  if (!(q > 0.0 && q < 1.0)) throw InputError("success probability must lie in (0,1)");
  if (d < 1) throw InputError("dimension must be at least 1");
  const double hit = std::pow(p, static_cast<double>(d));
  const double ratio = std::log1p(-q) / std::log1p(-hit);
  if (!std::isfinite(ratio) || ratio >= 9.0e18)
    throw NumericalError("candidate budget overflows; unshifted fraction too small");
  return static_cast<Index>(std::ceil(ratio));
}

std::pair<ShiftReport, SeedFreeTrace> run_seedfree_embedded(const Embedding& e1,
                                                            const Embedding& e2,
                                                            const SeedFreeConfig& config) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
  const Index n = e1.X.rows();
  const ResolvedConfig rc = resolve(config, e1.X.cols(), e2.X.cols(), n);

  const FilterStats stats = filter_stats(e1, e2, rc.L, config.alpha_tilde);

  SeedFreeTrace trace;
  std::vector<IndexVec> sets;
  const std::uint64_t sampler_seed = substream_seed(config.rng_seed, "candidates");
  if (config.sampling == SamplingMode::feasible_direct) {
    sets = sample_feasible_candidates(stats, rc.L, config.M, sampler_seed, 0, &trace.sampling);
  } else {
    sets = uniform_candidates(n, rc.L, config.M, sampler_seed, trace.sampling);
  }

  trace.candidates.reserve(sets.size());
  bool any_passed = false;
  for (auto& s : sets) {
    CandidateRecord rec;
    rec.seeds = std::move(s);
    rec.passed_filter = candidate_passes(stats, rec.seeds);
    any_passed = any_passed || rec.passed_filter;
    trace.candidates.push_back(std::move(rec));
  }
  if (!any_passed) {
    const char* what = trace.candidates.empty()
                           ? "no candidate seed sets could be sampled"
                           : "every candidate seed set failed the pair filter";
    throw NoViableCandidateError(what, std::move(trace));
  }

  // The covariance cores are only needed to score filter survivors, which is
  // why they are assembled after the all-rejected exit above.
  const CovarianceCores cores = covariance_cores(e1, e2);

  // Each survivor is scored independently against the shared cores; a
  // candidate with degenerate seed geometry scores zero rather than aborting
  // the sweep.
  parallel_for(Index{0}, static_cast<Index>(trace.candidates.size()), [&](Index i) {
    CandidateRecord& rec = trace.candidates[static_cast<std::size_t>(i)];
    if (!rec.passed_filter) return;
    try {
      rec.h = static_cast<Index>(
          score_with_seeds(e1, e2, cores, rec.seeds, config.alpha).Uhat.size());
    } catch (const DegenerateSeedsError&) {
      rec.h = 0;
    }
  });

  Index best = -1;
  for (std::size_t i = 0; i < trace.candidates.size(); ++i) {
    const CandidateRecord& rec = trace.candidates[i];
    if (!rec.passed_filter) continue;
    if (best < 0 || rec.h > trace.candidates[static_cast<std::size_t>(best)].h)
      best = static_cast<Index>(i);
  }
  trace.chosen = best;
  const IndexVec& winner = trace.candidates[static_cast<std::size_t>(best)].seeds;

  // Expanded seed set: everything the winning alignment retained. Fall back
  // to the winner itself when that set is too small or too degenerate to fit
  // an alignment.
  ShiftReport winner_rep = score_with_seeds(e1, e2, cores, winner, config.alpha);
  trace.expanded_seeds = winner_rep.Uhat;
  if (static_cast<Index>(trace.expanded_seeds.size()) >= rc.d_max) {
    try {
      ShiftReport final_rep =
          score_with_seeds(e1, e2, cores, trace.expanded_seeds, config.alpha);
      return {std::move(final_rep), std::move(trace)};
    } catch (const DegenerateSeedsError&) {
    }
  }
  trace.expansion_fallback = true;
  trace.expanded_seeds = winner;
  return {std::move(winner_rep), std::move(trace)};
}

std::pair<ShiftReport, SeedFreeTrace> run_seedfree(const Graph& g1, const Graph& g2,
                                                   const SeedFreeConfig& config) {
  if (g1.n() != g2.n()) throw InputError("graphs must have the same number of vertices");
  const Index d1 = config.d1 > 0 ? config.d1 : config.sig1.total();
  const Index d2 = config.d2 > 0 ? config.d2
                                 : (config.sig2.total() > 0 ? config.sig2.total() : d1);
  const Embedding e1 = config.sig1.total() > 0 ? embed(g1, config.sig1, config.embed)
                                               : embed(g1, d1, config.embed);
  const Embedding e2 = config.sig2.total() > 0 ? embed(g2, config.sig2, config.embed)
                                               : embed(g2, d2, config.embed);
  return run_seedfree_embedded(e1, e2, config);
}

}  // namespace netshift
