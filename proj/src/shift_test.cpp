#include "netshift/shift_test.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"
#include "netshift/parallel.hpp"
#include "netshift/stats.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace netshift {

namespace {

constexpr double kXiFloor = 1e-10;       // keeps Gamma_hat invertible when Phat hits 0 or 1
constexpr double kGammaMaxCond = 1e12;   // beyond this the statistic is reported as NaN

void check_vertex(Index k, Index n) {
  if (k < 0 || k >= n) throw InputError("vertex index out of range");
}

void check_seeds(const IndexVec& seeds, Index n) {
  if (seeds.empty()) throw InputError("seed set must be nonempty");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i] < 0 || seeds[i] >= n) throw InputError("seed index out of range");
    if (i > 0 && seeds[i] <= seeds[i - 1])
      throw InputError("seed indices must be strictly increasing");
  }
}

Matd seed_rows(const Matd& X, const IndexVec& seeds) {
  Matd B(static_cast<Index>(seeds.size()), X.cols());
  for (Index i = 0; i < B.rows(); ++i) B.row(i) = X.row(seeds[static_cast<std::size_t>(i)]);
  return B;
}

// Columns of U scaled by |lambda|^{-1/2} and the metric sign, so that
// R^T diag(xi) R is already the metric-sandwiched contraction.
Matd whitened_basis(const Embedding& e) {
  const Vecd mags = e.lambda.cwiseAbs();
  if (mags.minCoeff() <= 1e-12 * mags.maxCoeff())
    throw NumericalError("embedding Gram matrix is numerically singular");
  const Vecd s = metric_diag(e.sig);
  return e.U * (s.array() / mags.array().sqrt()).matrix().asDiagonal();
}

std::vector<Matd> cores_of(const Embedding& e) {
  const Index n = e.X.rows();
  const Matd R = whitened_basis(e);
  std::vector<Matd> cores(static_cast<std::size_t>(n));
  parallel_for(Index{0}, n, [&](Index k) {
    const Vecd p = estimate_probability_row(e, k);
    const Vecd xi = (p.array() * (1.0 - p.array())).max(kXiFloor).matrix();
    cores[static_cast<std::size_t>(k)] = R.transpose() * xi.asDiagonal() * R;
  });
  return cores;
}

// Quadratic form y^T G^{-1} y through a symmetric eigendecomposition, with an
// explicit condition cap. Returns NaN when G is effectively singular.
double quadratic_form(const Matd& G, const Vecd& y) {
  Eigen::SelfAdjointEigenSolver<Matd> es((G + G.transpose()) / 2.0);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
  const Vecd& ev = es.eigenvalues();
  const double lo = ev(0), hi = ev(ev.size() - 1);
  if (!(lo > 0.0) || hi / lo > kGammaMaxCond) return std::numeric_limits<double>::quiet_NaN();
  const Vecd z = es.eigenvectors().transpose() * y;
  return (z.array().square() / ev.array()).sum();
}

IndexVec keep_after_bh(const Vecd& p, double alpha) {
  std::vector<double> adjusted(static_cast<std::size_t>(p.size()));
  for (Index k = 0; k < p.size(); ++k)
    adjusted[static_cast<std::size_t>(k)] = std::isnan(p(k)) ? 0.0 : p(k);
  return benjamini_hochberg(adjusted, alpha).kept;
}

}  // namespace

Matd estimate_shifts(const Embedding& e1, const Embedding& e2, const AlignmentMap& map) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
  if (map.W.rows() != e1.X.cols() || map.W.cols() != e2.X.cols())
    throw InputError("alignment map dimensions do not match the embeddings");
  return e2.X - e1.X * map.W;
}

Matd estimate_probability(const Embedding& e) {
  Matd P = e.X * metric_diag(e.sig).asDiagonal() * e.X.transpose();
  P = ((P + P.transpose()) / 2.0).eval();  // exact symmetry for downstream masks
  return clip01(P);
}

Vecd estimate_probability_row(const Embedding& e, Index k) {
  check_vertex(k, e.X.rows());
  const Vecd s = metric_diag(e.sig);
  Vecd row = e.X * (s.asDiagonal() * e.X.row(k).transpose());
  return row.cwiseMax(0.0).cwiseMin(1.0);
}

CovarianceCores covariance_cores(const Embedding& e1, const Embedding& e2) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
  CovarianceCores cc;
  cc.core1 = cores_of(e1);
  cc.core2 = cores_of(e2);
  return cc;
}

CovarianceEstimate gamma_hat(const Embedding& e1, const Embedding& e2,
                             const AlignmentMap& map, Index k) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
  check_vertex(k, e1.X.rows());
  if (map.W.rows() != e1.X.cols() || map.W.cols() != e2.X.cols())
    throw InputError("alignment map dimensions do not match the embeddings");

  const Matd R1 = whitened_basis(e1);
  const Matd R2 = whitened_basis(e2);
  const Vecd p1 = estimate_probability_row(e1, k);
  const Vecd p2 = estimate_probability_row(e2, k);

  CovarianceEstimate est;
  est.Xi_diag1 = (p1.array() * (1.0 - p1.array())).matrix();
  est.Xi_diag2 = (p2.array() * (1.0 - p2.array())).matrix();

  const Vecd xi1 = est.Xi_diag1.cwiseMax(kXiFloor);
  const Vecd xi2 = est.Xi_diag2.cwiseMax(kXiFloor);
  const Matd C1 = R1.transpose() * xi1.asDiagonal() * R1;
  const Matd C2 = R2.transpose() * xi2.asDiagonal() * R2;
  Matd G = C2 + map.W.transpose() * C1 * map.W;
  est.Gamma_hat = (G + G.transpose()) / 2.0;
  return est;
}

Matd gamma_true(const ShiftScenario& scenario, Index k) {
  check_vertex(k, scenario.n());
  auto term = [&](const LatentModel& m) {
    const Vecd row = (m.X * metric_diag(m.sig).asDiagonal() * m.X.row(k).transpose()).eval();
    const Vecd xi = (row.array() * (1.0 - row.array())).matrix();
    const Matd G = (m.X.transpose() * m.X).inverse();
    const Matd B = m.X * G;
    return Matd(B.transpose() * xi.asDiagonal() * B);
  };
  Matd G = term(scenario.model2) +
           scenario.W_true.transpose() * term(scenario.model1) * scenario.W_true;
  return ((G + G.transpose()) / 2.0).eval();
}

std::pair<Vecd, Vecd> test_statistics(const Matd& Yhat, const std::vector<Matd>& gammas) {
  const Index n = Yhat.rows();
  if (static_cast<Index>(gammas.size()) != n)
    throw InputError("need one covariance per vertex");
  const double dof = static_cast<double>(Yhat.cols());

  Vecd T(n), p(n);
  for (Index k = 0; k < n; ++k) {
    T(k) = quadratic_form(gammas[static_cast<std::size_t>(k)], Yhat.row(k).transpose());
    p(k) = std::isnan(T(k)) ? std::numeric_limits<double>::quiet_NaN()
                            : 1.0 - chi2_cdf(T(k), dof);
  }
  return {std::move(T), std::move(p)};
}

ShiftReport test_with_alignment(const Embedding& e1, const Embedding& e2,
                                const CovarianceCores& cores, const AlignmentMap& map,
                                double alpha) {
  ShiftReport rep;
  rep.alignment = map;
  rep.dof = e2.X.cols();
  rep.Yhat = estimate_shifts(e1, e2, map);

  const Index n = rep.Yhat.rows();
  if (static_cast<Index>(cores.core1.size()) != n || static_cast<Index>(cores.core2.size()) != n)
    throw InputError("covariance cores do not match the vertex count");

  const double dof = static_cast<double>(rep.dof);
  rep.T.resize(n);
  rep.p.resize(n);
  parallel_for(Index{0}, n, [&](Index k) {
    const Matd G = cores.core2[static_cast<std::size_t>(k)] +
                   map.W.transpose() * cores.core1[static_cast<std::size_t>(k)] * map.W;
    rep.T(k) = quadratic_form(G, rep.Yhat.row(k).transpose());
    rep.p(k) = std::isnan(rep.T(k)) ? std::numeric_limits<double>::quiet_NaN()
                                    : 1.0 - chi2_cdf(rep.T(k), dof);
  });
  rep.Uhat = keep_after_bh(rep.p, alpha);
  return rep;
}

ShiftReport run_seeded_embedded(const Embedding& e1, const Embedding& e2,
                                const IndexVec& seeds, double alpha) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
  check_seeds(seeds, e1.X.rows());

  AlignmentMap map = align_seed_blocks(seed_rows(e1.X, seeds), seed_rows(e2.X, seeds),
                                       e1.sig, e2.sig);
  map.seeds = seeds;
  const CovarianceCores cores = covariance_cores(e1, e2);
  return test_with_alignment(e1, e2, cores, map, alpha);
}

ShiftReport run_seeded(const Graph& g1, const Graph& g2, Index d1, Index d2,
                       const IndexVec& seeds, double alpha, const EmbedOptions& eopts) {
  if (g1.n() != g2.n()) throw InputError("graphs must have the same number of vertices");
  const Embedding e1 = embed(g1, d1, eopts);
  const Embedding e2 = embed(g2, d2, eopts);
  return run_seeded_embedded(e1, e2, seeds, alpha);
}

ShiftReport run_seeded(const Graph& g1, const Graph& g2, Index d, const IndexVec& seeds,
                       double alpha, const EmbedOptions& eopts) {
  return run_seeded(g1, g2, d, d, seeds, alpha, eopts);
}

}  // namespace netshift
