#pragma once

// Shared helpers for the unit and acceptance suites: independent oracles
// (covariance via explicit pseudoinverses, variance proxies via direct loops,
// brute-force multiple testing) and small statistical utilities. Everything
// here favors the obvious formula over the optimized one in src/, so the two
// routes can disagree when the library is wrong.

#include "netshift/align.hpp"
#include "netshift/embedding.hpp"
#include "netshift/graph.hpp"
#include "netshift/linalg.hpp"
#include "netshift/pair_filter.hpp"
#include "netshift/rng.hpp"
#include "netshift/shift_test.hpp"
#include "netshift/stats.hpp"
#include "netshift/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace testsup {

using netshift::Embedding;
using netshift::Index;
using netshift::IndexVec;
using netshift::Matd;
using netshift::Rng;
using netshift::Signature;
using netshift::Vecd;

inline double gaussian(Rng& rng) {
  const double u1 = std::max(rng.uniform01(), 1e-300);
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Matd gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matd G(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) G(i, j) = gaussian(rng);
  return G;
}

// Haar-distributed rotation: QR of a Gaussian matrix with the R diagonal
// signs absorbed into Q.
inline Matd random_orthogonal(Index d, Rng& rng) {
  const Matd G = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matd> qr(G);
  Matd Q = qr.householderQ() * Matd::Identity(d, d);
  const Matd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

// One-sample Kolmogorov-Smirnov statistic against the cdf functor.
template <class F>
double ks_statistic(std::vector<double> xs, F&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Inverse of the Kolmogorov survival function by bisection.
inline double ks_quantile(double alpha) {
  double lo = 1e-3, hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (netshift::kolmogorov_sf(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Critical value for the one-sample KS statistic at level alpha (asymptotic).
inline double ks_threshold(std::size_t n, double alpha) {
  return ks_quantile(alpha) / std::sqrt(static_cast<double>(n));
}

// argmin over orthogonal W of ||A W - B||_F, via the polar factor of A^T B.
inline Matd frob_polar_rotation(const Matd& A, const Matd& B) {
  Eigen::JacobiSVD<Matd> svd(A.transpose() * B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// min over orthogonal W of ||A W - B||_F, computed from singular values only.
inline double frob_procrustes_residual(const Matd& A, const Matd& B) {
  Eigen::JacobiSVD<Matd> svd(A.transpose() * B);
  const double cross = svd.singularValues().sum();
  const double sq = A.squaredNorm() + B.squaredNorm() - 2.0 * cross;
  return std::sqrt(std::max(0.0, sq));
}

// Largest row norm of A W - B at the Frobenius-optimal W. Upper bound for the
// rotation-minimized two-to-infinity distance, and the standard stand-in.
inline double two_to_inf_residual(const Matd& A, const Matd& B) {
  const Matd W = frob_polar_rotation(A, B);
  return (A * W - B).rowwise().norm().maxCoeff();
}

// Lloyd iterations with k-means++ seeding, best of `restarts` runs.
inline std::vector<int> kmeans(const Matd& X, int k, std::uint64_t seed, int restarts = 8) {
  const Index n = X.rows();
  std::vector<int> best_labels(static_cast<std::size_t>(n), 0);
  double best_cost = std::numeric_limits<double>::infinity();
  Rng rng(seed);

  for (int r = 0; r < restarts; ++r) {
    Matd centers(k, X.cols());
    centers.row(0) = X.row(rng.index(n));
    Vecd dist2 = (X.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double total = dist2.sum();
      double u = rng.uniform01() * total;
      Index pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        u -= dist2(i);
        if (u <= 0) { pick = i; break; }
      }
      centers.row(c) = X.row(pick);
      dist2 = dist2.cwiseMin((X.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (int it = 0; it < 100; ++it) {
      bool moved = false;
      for (Index i = 0; i < n; ++i) {
        int arg = 0;
        double bc = (X.row(i) - centers.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
          const double d = (X.row(i) - centers.row(c)).squaredNorm();
          if (d < bc) { bc = d; arg = c; }
        }
        if (labels[static_cast<std::size_t>(i)] != arg) {
          labels[static_cast<std::size_t>(i)] = arg;
          moved = true;
        }
      }
      Matd sums = Matd::Zero(k, X.cols());
      std::vector<Index> counts(static_cast<std::size_t>(k), 0);
      for (Index i = 0; i < n; ++i) {
        sums.row(labels[static_cast<std::size_t>(i)]) += X.row(i);
        ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
      }
      for (int c = 0; c < k; ++c)
        if (counts[static_cast<std::size_t>(c)] > 0)
          centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      if (!moved) break;
    }

    double cost = 0.0;
    for (Index i = 0; i < n; ++i)
      cost += (X.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best_labels = labels;
    }
  }
  return best_labels;
}

// Best agreement between predicted and true labels over all relabelings.
inline double label_agreement(const std::vector<int>& pred, const std::vector<Index>& truth,
                              int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    Index hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
      if (perm[static_cast<std::size_t>(pred[i])] == static_cast<int>(truth[i])) ++hits;
    best = std::max(best, static_cast<double>(hits) / static_cast<double>(pred.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Covariance oracle built from explicit SVD pseudoinverses of the embedding
// coordinate matrices rather than the closed-form |lambda|^{-1/2} route.
inline Matd gamma_pinv_oracle(const Embedding& e1, const Embedding& e2, const Matd& W,
                              Index k) {
  const auto one = [](const Embedding& e, Index v) {
    const Vecd s = netshift::metric_diag(e.sig);
    Matd P = e.X * s.asDiagonal() * e.X.transpose();
    P = ((P + P.transpose()) / 2.0).eval();
    P = netshift::clip01(P);
    const Vecd xi =
        (P.row(v).array() * (1.0 - P.row(v).array())).max(1e-10).matrix().transpose();
    const Matd B = netshift::pinv(e.X).transpose() * s.asDiagonal();  // n x d
    return Matd(B.transpose() * xi.asDiagonal() * B);
  };
  return one(e2, k) + W.transpose() * one(e1, k) * W;
}

// Entrywise variance proxy computed with direct loops over vertices. Cubic in
// n; only for small instances.
inline Matd dense_upsilon_oracle(const Embedding& e1, const Embedding& e2) {
  const Index n = e1.U.rows();
  const auto edge_var = [](const Embedding& e) {
    Matd P = e.X * netshift::metric_diag(e.sig).asDiagonal() * e.X.transpose();
    P = ((P + P.transpose()) / 2.0).eval();
    P = netshift::clip01(P);
    return Matd((P.array() * (1.0 - P.array())).matrix());
  };
  const Matd Xi1 = edge_var(e1);
  const Matd Xi2 = edge_var(e2);

  const auto psi = [n](const Matd& U, const Matd& Xi, Index k, Index l) {
    double acc = 0.0;
    for (Index t = 0; t < n; ++t) {
      const double g = U.row(l).dot(U.row(t));
      acc += Xi(k, t) * g * g;
    }
    return acc;
  };

  Matd Y(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      if (k == l) {
        Y(k, k) = 4.0 * (psi(e1.U, Xi1, k, k) + psi(e2.U, Xi2, k, k));
        continue;
      }
      const double pk1 = e1.U.row(k).squaredNorm(), pl1 = e1.U.row(l).squaredNorm();
      const double pk2 = e2.U.row(k).squaredNorm(), pl2 = e2.U.row(l).squaredNorm();
      Y(k, l) = psi(e1.U, Xi1, k, l) + psi(e2.U, Xi2, k, l) + psi(e1.U, Xi1, l, k) +
                psi(e2.U, Xi2, l, k) + 2.0 * pk1 * pl1 * Xi1(k, l) +
                2.0 * pk2 * pl2 * Xi2(k, l);
    }
  }
  return Y;
}

// Textbook step-up rule applied literally: largest k with p_(k) <= alpha*k/m.
inline IndexVec brute_force_bh(const std::vector<double>& p, double alpha) {
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p[a] != p[b] ? p[a] < p[b] : a < b;
  });
  std::size_t cut = 0;
  for (std::size_t k = m; k >= 1; --k) {
    if (p[order[k - 1]] <= alpha * static_cast<double>(k) / static_cast<double>(m)) {
      cut = k;
      break;
    }
  }
  IndexVec rejected;
  for (std::size_t i = 0; i < cut; ++i) rejected.push_back(static_cast<Index>(order[i]));
  std::sort(rejected.begin(), rejected.end());
  return rejected;
}

// Synthetic embedding with exactly orthonormal columns and chosen spectrum
// signs, for oracle-vs-library identities that need no sampled graph.
inline Embedding synthetic_embedding(Index n, Signature sig, Rng& rng, double scale = 1.0) {
  const Index d = sig.total();
  const Matd G = gaussian_matrix(n, d, rng);
  Eigen::HouseholderQR<Matd> qr(G);
  Embedding e;
  e.U = qr.householderQ() * Matd::Identity(n, d);
  e.lambda.resize(d);
  for (Index j = 0; j < sig.d_plus; ++j)
    e.lambda(j) = scale * (static_cast<double>(sig.d_plus - j) + rng.uniform01());
  for (Index j = 0; j < sig.d_minus; ++j)
    e.lambda(sig.d_plus + j) =
        -scale * (static_cast<double>(sig.d_minus - j) + rng.uniform01());
  e.X = e.U * e.lambda.cwiseAbs().cwiseSqrt().asDiagonal();
  e.sig = sig;
  return e;
}

// Mean false discovery proportion ingredients: flagged = complement of Uhat.
inline double false_discovery_proportion(const IndexVec& unshifted_truth, const IndexVec& Uhat,
                                         Index n) {
  std::vector<char> is_null(static_cast<std::size_t>(n), 0);
  for (Index k : unshifted_truth) is_null[static_cast<std::size_t>(k)] = 1;
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (Index k : Uhat) kept[static_cast<std::size_t>(k)] = 1;
  Index rejected = 0, false_rej = 0;
  for (Index k = 0; k < n; ++k) {
    if (kept[static_cast<std::size_t>(k)]) continue;
    ++rejected;
    if (is_null[static_cast<std::size_t>(k)]) ++false_rej;
  }
  return rejected == 0 ? 0.0 : static_cast<double>(false_rej) / static_cast<double>(rejected);
}

// Fraction of vertices whose shifted/unshifted call matches the planted truth.
inline double label_accuracy(const IndexVec& unshifted_truth, const IndexVec& Uhat, Index n) {
  std::vector<char> is_null(static_cast<std::size_t>(n), 0);
  for (Index k : unshifted_truth) is_null[static_cast<std::size_t>(k)] = 1;
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (Index k : Uhat) kept[static_cast<std::size_t>(k)] = 1;
  Index correct = 0;
  for (Index k = 0; k < n; ++k)
    if (kept[static_cast<std::size_t>(k)] == is_null[static_cast<std::size_t>(k)]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(n);
}

// Three-community connection matrices reused across simulation tests. The
// first is positive definite; the second has one negative eigenvalue.
inline netshift::Matd sbm_blocks() {
  netshift::Matd B(3, 3);
  B << 0.7, 0.1, 0.1,
       0.1, 0.65, 0.1,
       0.1, 0.1, 0.6;
  return B;
}

inline netshift::Matd grdpg_blocks() {
  netshift::Matd B(3, 3);
  B << 0.7, 0.1, 0.1,
       0.1, 0.3, 0.8,
       0.1, 0.8, 0.5;
  return B;
}

}  // namespace testsup
