#include "netshift/graph.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"
#include "netshift/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace netshift {

namespace {

// Ceiling with a small backoff so that fractions like 0.3*300, which land a
// few ulps above an integer, do not round up twice.
Index ceil_count(double fraction, Index n) {
  return static_cast<Index>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

void check_fraction(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw InputError("shift_fraction must lie in [0,1]");
}

// Eigenfactor of a block matrix: rows of F are the block latent positions,
// ordered so positive-eigenvalue directions come first (descending), then
// negative ones by descending magnitude. P = Z B Z^T holds exactly because
// F * diag(sign(lambda)) * F^T = B.
struct BlockFactor {
  Matd F;
  Signature sig;
};

BlockFactor block_factor(const Matd& B) {
  const Index d = B.rows();
  if (d == 0 || B.cols() != d) throw InputError("block matrix must be square and nonempty");
  if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InputError("block matrix must be symmetric");
  if (B.minCoeff() < 0.0 || B.maxCoeff() > 1.0)
    throw InputError("block matrix entries must lie in [0,1]");

  Eigen::SelfAdjointEigenSolver<Matd> es(B);
  if (es.info() != Eigen::Success) throw NumericalError("block matrix eigendecomposition failed");
  const Vecd& vals = es.eigenvalues();  // ascending
  if (vals.cwiseAbs().minCoeff() < 1e-9)
    throw InputError("block matrix is numerically rank-deficient (|eigenvalue| < 1e-9)");

  IndexVec order;
  for (Index i = d - 1; i >= 0; --i)
    if (vals(i) > 0.0) order.push_back(i);  // positives, descending
  const Index d_plus = static_cast<Index>(order.size());
  for (Index i = 0; i < d; ++i)
    if (vals(i) < 0.0) order.push_back(i);  // negatives, descending magnitude

  Matd V(d, d);
  Vecd lam(d);
  for (Index j = 0; j < d; ++j) {
    V.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    lam(j) = vals(order[static_cast<std::size_t>(j)]);
  }
  canonical_signs(V);

  BlockFactor bf;
  bf.F = V * lam.cwiseAbs().cwiseSqrt().asDiagonal();
  bf.sig = Signature{d_plus, d - d_plus};
  return bf;
}

Matd rows_from_assignment(const Matd& F, const IndexVec& z) {
  Matd X(static_cast<Index>(z.size()), F.cols());
  for (Index i = 0; i < X.rows(); ++i) X.row(i) = F.row(z[static_cast<std::size_t>(i)]);
  return X;
}

}  // namespace

Matd probability_matrix(const LatentModel& model) {
  Matd P = model.X * metric_diag(model.sig).asDiagonal() * model.X.transpose();
  return ((P + P.transpose()) / 2.0).eval();
}

void validate_adjacency(const Matd& adj) {
  const Index n = adj.rows();
  if (n == 0 || adj.cols() != n) throw InputError("adjacency matrix must be square and nonempty");
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double v = adj(i, j);
      if (v != 0.0 && v != 1.0) throw InputError("adjacency entries must be exactly 0 or 1");
    }
    if (adj(j, j) != 0.0) throw InputError("adjacency diagonal must be zero (no self-loops)");
  }
  if (adj != adj.transpose()) throw InputError("adjacency matrix must be symmetric");
}

Graph sample_graph(const Matd& P, std::uint64_t rng_seed) {
  const Index n = P.rows();
  if (P.cols() != n) throw InputError("probability matrix must be square");
  if (P.minCoeff() < -1e-9 || P.maxCoeff() > 1.0 + 1e-9)
    throw InputError("probability matrix has entries outside [0,1]");

  Rng rng(rng_seed);
  Graph g;
  g.adj = Matd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double p = std::min(1.0, std::max(0.0, P(i, j)));
      const double a = rng.bernoulli(p) ? 1.0 : 0.0;
      g.adj(i, j) = a;
      g.adj(j, i) = a;
    }
  }
  return g;
}

Graph sample_graph(const LatentModel& model, std::uint64_t rng_seed) {
  return sample_graph(probability_matrix(model), rng_seed);
}

LatentModel make_rdpg_latents(Index n, Index d, std::uint64_t rng_seed) {
  if (n < d || d < 1) throw InputError("make_rdpg_latents: need n >= d >= 1");
  Rng rng(rng_seed);
  LatentModel m;
  m.X.resize(n, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) m.X(i, j) = std::sqrt(rng.uniform01()) * scale;
  m.sig = Signature{d, 0};
  return m;
}

ShiftScenario make_rdpg_scenario(Index n, Index d, double shift_fraction,
                                 std::uint64_t rng_seed) {
  check_fraction(shift_fraction);
  const Index m = ceil_count(shift_fraction, n);

  ShiftScenario sc;
  sc.model1 = make_rdpg_latents(n, d, substream_seed(rng_seed, "latents", 1));
  sc.model2 = sc.model1;
  if (m > 0) {
    const LatentModel fresh = make_rdpg_latents(std::max(m, d), d, substream_seed(rng_seed, "latents", 2));
    sc.model2.X.bottomRows(m) = fresh.X.topRows(m);
  }
  sc.unshifted.resize(static_cast<std::size_t>(n - m));
  std::iota(sc.unshifted.begin(), sc.unshifted.end(), Index{0});
  sc.W_true = Matd::Identity(d, d);
  sc.Y_true = sc.model2.X - sc.model1.X;
  return sc;
}

ShiftScenario make_sbm_scenario(Index n, const Matd& B, double shift_fraction,
                                std::uint64_t rng_seed) {
  check_fraction(shift_fraction);
  if (n < 1) throw InputError("make_sbm_scenario: need n >= 1");
  const BlockFactor bf = block_factor(B);
  const Index d = B.rows();
  const Index m = ceil_count(shift_fraction, n);

  Rng assign = substream(rng_seed, "blocks1");
  Rng reassign = substream(rng_seed, "blocks2");

  ShiftScenario sc;
  sc.blocks1.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) sc.blocks1[static_cast<std::size_t>(i)] = assign.index(d);
  sc.blocks2 = sc.blocks1;
  for (Index i = n - m; i < n; ++i) {
    const Index own = sc.blocks2[static_cast<std::size_t>(i)];
    const Index r = reassign.index(d - 1);
    sc.blocks2[static_cast<std::size_t>(i)] = r + (r >= own ? 1 : 0);
  }

  sc.model1 = LatentModel{rows_from_assignment(bf.F, sc.blocks1), bf.sig};
  sc.model2 = LatentModel{rows_from_assignment(bf.F, sc.blocks2), bf.sig};
  sc.unshifted.resize(static_cast<std::size_t>(n - m));
  std::iota(sc.unshifted.begin(), sc.unshifted.end(), Index{0});
  sc.W_true = Matd::Identity(d, d);
  sc.Y_true = sc.model2.X - sc.model1.X;
  return sc;
}

ShiftScenario make_rank_mismatch_scenario(Index n, const Matd& B, std::uint64_t rng_seed,
                                          double shift_fraction) {
  check_fraction(shift_fraction);
  if (B.rows() != 3 || B.cols() != 3) throw InputError("rank-mismatch scenario expects a 3x3 block matrix");
  if (n < 2) throw InputError("make_rank_mismatch_scenario: need n >= 2");
  const BlockFactor two = block_factor(B.topLeftCorner(2, 2));
  const Index m = ceil_count(shift_fraction, n);
  if (m >= n) throw InputError("rank-mismatch scenario needs a nonempty unshifted set");

  Rng assign = substream(rng_seed, "blocks1");
  Rng reassign = substream(rng_seed, "blocks2");

  ShiftScenario sc;
  sc.blocks1.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) sc.blocks1[static_cast<std::size_t>(i)] = assign.index(2);
  sc.blocks2 = sc.blocks1;
  bool third_occupied = false;
  for (Index i = n - m; i < n; ++i) {
    const Index own = sc.blocks2[static_cast<std::size_t>(i)];
    const Index r = reassign.index(2);
    const Index moved = r + (r >= own ? 1 : 0);
    sc.blocks2[static_cast<std::size_t>(i)] = moved;
    third_occupied |= (moved == 2);
  }

  // If no vertex actually lands in the third block, network 2 is rank 2 as
  // well and the scenario degrades to the equal-rank case.
  const BlockFactor second = third_occupied ? block_factor(B) : two;

  sc.model1 = LatentModel{rows_from_assignment(two.F, sc.blocks1), two.sig};
  sc.model2 = LatentModel{rows_from_assignment(second.F, sc.blocks2), second.sig};
  sc.unshifted.resize(static_cast<std::size_t>(n - m));
  std::iota(sc.unshifted.begin(), sc.unshifted.end(), Index{0});

  // The common transform on the unshifted rows: X2_U = X1_U * W exactly, since
  // both Gram matrices restrict to the same probabilities there.
  Matd X1U(n - m, sc.model1.dim()), X2U(n - m, sc.model2.dim());
  for (Index i = 0; i < n - m; ++i) {
    X1U.row(i) = sc.model1.X.row(i);
    X2U.row(i) = sc.model2.X.row(i);
  }
  sc.W_true = pinv(X1U) * X2U;
  const double resid = (X1U * sc.W_true - X2U).cwiseAbs().maxCoeff();
  if (resid > 1e-12)
    throw NumericalError("rank-mismatch scenario: unshifted rows are not exactly alignable (residual " +
                         std::to_string(resid) + ")");
  sc.Y_true = sc.model2.X - sc.model1.X * sc.W_true;
  for (Index i = 0; i < n - m; ++i) sc.Y_true.row(i).setZero();
  return sc;
}

}  // namespace netshift
