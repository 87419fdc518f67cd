#pragma once

#include "netshift/graph.hpp"
#include "netshift/seedfree.hpp"
#include "netshift/shift_test.hpp"

#include <string>
#include <vector>

namespace netshift {

// Low-dimensional summary of a network time series: pairwise distances,
// their CMDS coordinates, and the 1-D arc-length flattening.
struct MirrorCurve {
  Matd D;        // T x T, symmetric, zero diagonal
  Matd points;   // T x r CMDS coordinates
  Vecd iso;      // length T, nondecreasing, iso(0) = 0
  std::vector<std::string> labels;
};

// Flat index of unordered pair (i, j), i < j, in the layout the functions
// below use: all pairs with first element 0 first, then first element 1, ...
Index pair_slot(Index T, Index i, Index j);

// One seedless comparison per unordered snapshot pair, each with its own
// sub-seed derived from config.rng_seed and the pair id, so the set of
// reports is reproducible and independent of evaluation order. Any pair
// failure propagates.
std::vector<ShiftReport> pairwise_reports(const std::vector<Graph>& graphs,
                                          const SeedFreeConfig& config);

// D(i,j) = fraction of vertices flagged as shifted between snapshots i and j.
Matd network_distance_from_reports(const std::vector<ShiftReport>& reports, Index T, Index n);

// D(i,j) = 0 when vertex k was retained for pair (i,j), else its estimated
// shift norm from that pair's report.
Matd vertex_distance_from_reports(const std::vector<ShiftReport>& reports, Index T, Index k);

Matd network_distance_matrix(const std::vector<Graph>& graphs, const SeedFreeConfig& config);
Matd vertex_distance_matrix(const std::vector<Graph>& graphs, Index k,
                            const SeedFreeConfig& config);

// Classical multidimensional scaling of a distance matrix: double-center the
// squared distances, keep the top r eigenpairs, zero out negative
// eigenvalues, and scale the (sign-pinned) eigenvectors by sqrt(eigenvalue).
// If truncated is non-null it receives the number of zeroed eigenvalues.
Matd cmds(const Matd& D, Index r, Index* truncated = nullptr);

// Cumulative arc length along the time-ordered chain of points, anchored at
// 0: the 1-D geodesic flattening of the mirror.
Vecd iso_mirror(const Matd& points);

// Full pipeline: pairwise comparisons (network-level, or vertex-level when
// vertex >= 0), CMDS to r dimensions, and the iso curve. Labels default to
// the snapshot indices.
MirrorCurve make_mirror(const std::vector<Graph>& graphs, const SeedFreeConfig& config,
                        Index r, Index vertex = -1);

}  // namespace netshift
