#include "netshift/mirror.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"
#include "netshift/parallel.hpp"
#include "netshift/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace netshift {

namespace {

void check_snapshots(const std::vector<Graph>& graphs) {
  if (graphs.size() < 2) throw InputError("need at least two snapshots");
  const Index n = graphs.front().n();
  for (const Graph& g : graphs)
    if (g.n() != n) throw InputError("snapshots must share a vertex count");
}

Index check_report_count(const std::vector<ShiftReport>& reports, Index T) {
  if (T < 2) throw InputError("need at least two snapshots");
  if (static_cast<Index>(reports.size()) != T * (T - 1) / 2)
    throw InputError("report list does not match the snapshot count");
  return T;
}

}  // namespace

Index pair_slot(Index T, Index i, Index j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || i == j || j >= T) throw InputError("pair indices out of range");
  // Pairs with first element i start after the i leading groups.
  return i * T - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<ShiftReport> pairwise_reports(const std::vector<Graph>& graphs,
                                          const SeedFreeConfig& config) {
  check_snapshots(graphs);
  const Index T = static_cast<Index>(graphs.size());
  std::vector<ShiftReport> reports(static_cast<std::size_t>(T * (T - 1) / 2));

  parallel_for(Index{0}, T, [&](Index i) {
    for (Index j = i + 1; j < T; ++j) {
      SeedFreeConfig pair_config = config;
      pair_config.rng_seed = substream_seed(
          config.rng_seed, "pair", static_cast<std::uint64_t>(i * T + j));
      reports[static_cast<std::size_t>(pair_slot(T, i, j))] =
          run_seedfree(graphs[static_cast<std::size_t>(i)],
                       graphs[static_cast<std::size_t>(j)], pair_config)
              .first;
    }
  });
  return reports;
}

Matd network_distance_from_reports(const std::vector<ShiftReport>& reports, Index T, Index n) {
  check_report_count(reports, T);
  if (n < 1) throw InputError("vertex count must be positive");
  Matd D = Matd::Zero(T, T);
  for (Index i = 0; i < T; ++i)
    for (Index j = i + 1; j < T; ++j) {
      const ShiftReport& rep = reports[static_cast<std::size_t>(pair_slot(T, i, j))];
      D(i, j) = D(j, i) =
          static_cast<double>(n - static_cast<Index>(rep.Uhat.size())) / static_cast<double>(n);
    }
  return D;
}

Matd vertex_distance_from_reports(const std::vector<ShiftReport>& reports, Index T, Index k) {
  check_report_count(reports, T);
  Matd D = Matd::Zero(T, T);
  for (Index i = 0; i < T; ++i)
    for (Index j = i + 1; j < T; ++j) {
      const ShiftReport& rep = reports[static_cast<std::size_t>(pair_slot(T, i, j))];
      if (k < 0 || k >= rep.Yhat.rows()) throw InputError("vertex index out of range");
      const bool retained = std::binary_search(rep.Uhat.begin(), rep.Uhat.end(), k);
      D(i, j) = D(j, i) = retained ? 0.0 : rep.Yhat.row(k).norm();
    }
  return D;
}

Matd network_distance_matrix(const std::vector<Graph>& graphs, const SeedFreeConfig& config) {
  const auto reports = pairwise_reports(graphs, config);
  return network_distance_from_reports(reports, static_cast<Index>(graphs.size()),
                                       graphs.front().n());
}

Matd vertex_distance_matrix(const std::vector<Graph>& graphs, Index k,
                            const SeedFreeConfig& config) {
  const auto reports = pairwise_reports(graphs, config);
  return vertex_distance_from_reports(reports, static_cast<Index>(graphs.size()), k);
}

Matd cmds(const Matd& D, Index r, Index* truncated) {
  const Index T = D.rows();
  if (T < 1 || D.cols() != T) throw InputError("distance matrix must be square and nonempty");
  if (r < 1 || r > T) throw InputError("target dimension must lie in [1, T]");
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InputError("distance matrix must be symmetric");
  if (D.diagonal().cwiseAbs().maxCoeff() > 1e-12)
    throw InputError("distance matrix must have a zero diagonal");
  if (D.minCoeff() < 0.0) throw InputError("distances must be nonnegative");

  const Matd J = Matd::Identity(T, T) - Matd::Constant(T, T, 1.0 / static_cast<double>(T));
  Matd B = -0.5 * J * D.cwiseProduct(D) * J;
  B = ((B + B.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Matd> es(B);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigendecomposition failed");

  // Eigen returns ascending order; the top r live at the tail.
  Matd U(T, r);
  Vecd lam(r);
  for (Index c = 0; c < r; ++c) {
    U.col(c) = es.eigenvectors().col(T - 1 - c);
    lam(c) = es.eigenvalues()(T - 1 - c);
  }
  canonical_signs(U);

  Index zeroed = 0;
  for (Index c = 0; c < r; ++c)
    if (lam(c) < 0.0) {
      lam(c) = 0.0;
      ++zeroed;
    }
  if (truncated) *truncated = zeroed;
  return U * lam.cwiseSqrt().asDiagonal();
}

Vecd iso_mirror(const Matd& points) {
  const Index T = points.rows();
  if (T < 2) throw InputError("need at least two snapshots");
  Vecd iso(T);
  iso(0) = 0.0;
  for (Index t = 1; t < T; ++t)
    iso(t) = iso(t - 1) + (points.row(t) - points.row(t - 1)).norm();
  return iso;
}

MirrorCurve make_mirror(const std::vector<Graph>& graphs, const SeedFreeConfig& config,
                        Index r, Index vertex) {
  check_snapshots(graphs);
  const Index T = static_cast<Index>(graphs.size());
  const auto reports = pairwise_reports(graphs, config);

  MirrorCurve curve;
  curve.D = vertex >= 0 ? vertex_distance_from_reports(reports, T, vertex)
                        : network_distance_from_reports(reports, T, graphs.front().n());
  curve.points = cmds(curve.D, r);
  curve.iso = iso_mirror(curve.points);
  curve.labels.reserve(static_cast<std::size_t>(T));
  for (Index t = 0; t < T; ++t) curve.labels.push_back("t" + std::to_string(t));
  return curve;
}

}  // namespace netshift
