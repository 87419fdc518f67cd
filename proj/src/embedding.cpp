#include "netshift/embedding.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"
#include "netshift/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

namespace netshift {

namespace {

void check_symmetric_square(const Matd& A) {
  if (A.rows() == 0 || A.rows() != A.cols())
    throw InputError("spectral input must be a nonempty square matrix");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InputError("spectral input must be symmetric");
}

// Deterministic ordering of eigenvalues by magnitude: descending |lambda|,
// positive before negative on a magnitude tie, original position last.
IndexVec order_by_magnitude(const Vecd& vals, Index k) {
  IndexVec idx(static_cast<std::size_t>(vals.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double ma = std::abs(vals(a)), mb = std::abs(vals(b));
    if (ma != mb) return ma > mb;
    return vals(a) > vals(b);
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

std::pair<Vecd, Matd> dense_spectrum(const Matd& A, Index k) {
  Eigen::SelfAdjointEigenSolver<Matd> es(A);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigendecomposition failed");
  const IndexVec pick = order_by_magnitude(es.eigenvalues(), k);
  Vecd lam(k);
  Matd U(A.rows(), k);
  for (Index j = 0; j < k; ++j) {
    lam(j) = es.eigenvalues()(pick[static_cast<std::size_t>(j)]);
    U.col(j) = es.eigenvectors().col(pick[static_cast<std::size_t>(j)]);
  }
  return {std::move(lam), std::move(U)};
}

// Lanczos with full reorthogonalization for the k eigenpairs of largest
// magnitude. Both spectral ends of the tridiagonal converge first, which is
// exactly the by-magnitude extremes we need. After the residual test passes,
// a fresh random direction is spliced in and a few extra steps confirm the
// Ritz values are stable; this guards against a repeated eigenvalue whose
// second copy is invisible to a single-vector Krylov space.
std::pair<Vecd, Matd> lanczos_spectrum(const Matd& A, Index k, const EmbedOptions& options) {
  const Index n = A.rows();
  const Index cap = std::min<Index>(n, options.max_iter > 0 ? options.max_iter
                                                            : std::max<Index>(8 * k + 300, 160));
  const auto sym = A.selfadjointView<Eigen::Lower>();
  Rng rng(options.lanczos_seed);

  Matd V(n, cap);
  std::vector<double> alpha, beta;  // beta[j] links v_j to v_{j+1}
  alpha.reserve(static_cast<std::size_t>(cap));
  beta.reserve(static_cast<std::size_t>(cap));

  auto fresh_direction = [&](Index j) {
    Vecd v(n);
    for (Index attempt = 0; attempt < 64; ++attempt) {
      for (Index i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
      if (j > 0) {
        v -= V.leftCols(j) * (V.leftCols(j).transpose() * v);
        v -= V.leftCols(j) * (V.leftCols(j).transpose() * v);
      }
      const double norm = v.norm();
      if (norm > 1e-8 * std::sqrt(static_cast<double>(n))) return Vecd((v / norm).eval());
    }
    throw NumericalError("iterative eigensolver could not find a new start direction");
  };

  V.col(0) = fresh_direction(0);
  Index j = 0;              // columns 0..j of V are filled
  Index verify_until = -1;  // when >= 0, run until this step then compare
  Vecd snapshot;

  Eigen::SelfAdjointEigenSolver<Matd> tri;
  Vecd lam;
  Matd S;

  auto ritz = [&]() {
    const Index m = j + 1;
    Matd T = Matd::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) T(i + 1, i) = T(i, i + 1) = beta[static_cast<std::size_t>(i)];
    }
    tri.compute(T);
    const IndexVec pick = order_by_magnitude(tri.eigenvalues(), std::min<Index>(k, m));
    lam.resize(static_cast<Index>(pick.size()));
    S.resize(m, static_cast<Index>(pick.size()));
    for (Index c = 0; c < lam.size(); ++c) {
      lam(c) = tri.eigenvalues()(pick[static_cast<std::size_t>(c)]);
      S.col(c) = tri.eigenvectors().col(pick[static_cast<std::size_t>(c)]);
    }
  };

  while (true) {
    // One Lanczos step from v_j.
    Vecd w = sym * V.col(j);
    const double a = V.col(j).dot(w);
    alpha.push_back(a);
    w -= a * V.col(j);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * V.col(j - 1);
    w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    double b = w.norm();

    const bool at_cap = (j + 1 >= cap);
    const bool breakdown = (b < 1e-13 * std::max(1.0, std::abs(a)));
    const bool invariant = (j + 1 >= n);

    if (!at_cap && !invariant) {
      if (breakdown) {
        // The Krylov space hit an invariant subspace; splice a new random
        // direction and keep extending the same tridiagonal with a zero link.
        beta.push_back(0.0);
        V.col(j + 1) = fresh_direction(j + 1);
      } else {
        beta.push_back(b);
        V.col(j + 1) = w / b;
      }
    }

    const bool check_now = invariant || at_cap || verify_until == j + 1 ||
                           (verify_until < 0 && j + 1 >= k + 2 && (j + 1) % 8 == 0);
    if (check_now) {
      ritz();
      const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
      bool settled = (lam.size() == k) && (invariant || j + 1 >= n);
      if (!settled && lam.size() == k) {
        settled = true;
        const double tail = breakdown ? 0.0 : b;
        for (Index c = 0; c < k && settled; ++c)
          settled = std::abs(tail * S(j, c)) <= options.tol * scale;
      }
      if (settled && verify_until < 0 && j + 1 < n && !at_cap) {
        // Passed the residual test: schedule the confirmation run.
        snapshot = lam;
        verify_until = std::min<Index>(cap, j + 1 + k + 6);
        if (!breakdown) {
          beta.back() = 0.0;
          V.col(j + 1) = fresh_direction(j + 1);
        }
      } else if (settled && verify_until >= 0) {
        if ((lam - snapshot).cwiseAbs().maxCoeff() <= std::max(1e3 * options.tol, 1e-9) * scale) {
          Matd U = V.leftCols(j + 1) * S;
          return {std::move(lam), std::move(U)};
        }
        verify_until = -1;  // found new mass, resume the main iteration
      } else if (verify_until == j + 1) {
        verify_until = -1;  // confirmation window ended without settling
      }
      if (invariant || at_cap) {
        if (settled && lam.size() == k) {
          Matd U = V.leftCols(j + 1) * S;
          return {std::move(lam), std::move(U)};
        }
        break;  // no convergence within budget, fall back to the dense route
      }
    }
    ++j;
  }
  return dense_spectrum(A, k);
}

}  // namespace

std::pair<Vecd, Matd> spectrum_by_magnitude(const Matd& A, Index k, const EmbedOptions& options) {
  check_symmetric_square(A);
  const Index n = A.rows();
  if (k < 0 || k > n) throw InputError("requested spectrum size must lie in [0, n]");
  if (k == 0) return {Vecd(0), Matd(n, 0)};

  std::pair<Vecd, Matd> result = (n <= options.dense_cutoff || k >= n - 2)
                                     ? dense_spectrum(A, k)
                                     : lanczos_spectrum(A, k, options);
  canonical_signs(result.second);
  return result;
}

Embedding embed_matrix(const Matd& A, Index d, const EmbedOptions& options) {
  if (d < 1 || d > A.rows()) throw InputError("embedding dimension must lie in [1, n]");
  return embed_matrix(A, Signature{d, 0}, options);
}

Embedding embed(const Graph& g, Index d, const EmbedOptions& options) {
  validate_adjacency(g.adj);
  return embed_matrix(g.adj, d, options);
}

Embedding embed_matrix(const Matd& A, Signature sig, const EmbedOptions& options) {
  check_symmetric_square(A);
  const Index n = A.rows();
  const Index d = sig.total();
  if (sig.d_plus < 0 || sig.d_minus < 0 || d < 1 || d > n)
    throw InputError("requested signature must satisfy 1 <= d_plus + d_minus <= n");

  // The d_plus algebraically largest eigenpairs followed by the d_minus most
  // negative ones, each group ordered by decreasing magnitude. The iterative
  // solver targets large magnitudes, so each spectral end is reached through
  // a diagonal shift that makes it the dominant one.
  Vecd lam(d);
  Matd U(n, d);
  if (n <= options.dense_cutoff || d >= n - 2) {
    Eigen::SelfAdjointEigenSolver<Matd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigendecomposition failed");
    for (Index j = 0; j < sig.d_plus; ++j) {
      lam(j) = es.eigenvalues()(n - 1 - j);
      U.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    for (Index j = 0; j < sig.d_minus; ++j) {
      lam(sig.d_plus + j) = es.eigenvalues()(j);
      U.col(sig.d_plus + j) = es.eigenvectors().col(j);
    }
  } else {
    const double shift = A.cwiseAbs().rowwise().sum().maxCoeff();
    if (sig.d_plus > 0) {
      const Matd shifted = A + shift * Matd::Identity(n, n);
      auto [mu, V] = spectrum_by_magnitude(shifted, sig.d_plus, options);
      lam.head(sig.d_plus) = mu.array() - shift;
      U.leftCols(sig.d_plus) = V;
    }
    if (sig.d_minus > 0) {
      const Matd shifted = shift * Matd::Identity(n, n) - A;
      auto [mu, V] = spectrum_by_magnitude(shifted, sig.d_minus, options);
      lam.tail(sig.d_minus) = shift - mu.array();
      U.rightCols(sig.d_minus) = V;
    }
  }
  canonical_signs(U);

  // Eigenvalues at or below the rank floor have no usable sign, so a
  // shortfall of either sign is reported rather than papered over.
  const double tol = 1e-10 * std::max(lam.cwiseAbs().maxCoeff(), 1.0);
  Index pos = 0, neg = 0;
  for (Index j = 0; j < sig.d_plus; ++j)
    if (lam(j) > tol) ++pos;
  for (Index j = 0; j < sig.d_minus; ++j)
    if (lam(sig.d_plus + j) < -tol) ++neg;
  if (pos < sig.d_plus || neg < sig.d_minus)
    throw NumericalError("spectrum offers " + std::to_string(pos) + " positive and " +
                         std::to_string(neg) + " negative eigenvalues above the rank floor; "
                         "requested (" + std::to_string(sig.d_plus) + ", " +
                         std::to_string(sig.d_minus) + ")");

  Embedding e;
  e.U = std::move(U);
  e.lambda = std::move(lam);
  e.X = e.U * e.lambda.cwiseAbs().cwiseSqrt().asDiagonal();
  e.sig = sig;
  return e;
}

Embedding embed(const Graph& g, Signature sig, const EmbedOptions& options) {
  validate_adjacency(g.adj);
  return embed_matrix(g.adj, sig, options);
}

Index select_dimension(const Vecd& values, Index max_d) {
  const Index L = values.size();
  if (L == 0) throw InputError("select_dimension needs a nonempty profile");
  if (max_d < 1 || max_d > L - 1)
    throw InputError("select_dimension cap must lie in [1, profile length - 1]");
  const double scale = std::max(std::abs(values(0)), 1.0);
  for (Index i = 0; i < L; ++i) {
    if (!(values(i) >= 0.0)) throw InputError("select_dimension profile must be nonnegative");
    if (i > 0 && values(i) > values(i - 1) + 1e-9 * scale)
      throw InputError("select_dimension profile must be nonincreasing");
  }
  if (L == 1) return 1;

  // Shared-variance Gaussian profile likelihood is monotone in the pooled
  // within-group sum of squares, so minimise that directly.
  Vecd s1 = Vecd::Zero(L + 1), s2 = Vecd::Zero(L + 1);
  for (Index i = 0; i < L; ++i) {
    s1(i + 1) = s1(i) + values(i);
    s2(i + 1) = s2(i) + values(i) * values(i);
  }
  auto group_ss = [&](Index lo, Index hi) {  // [lo, hi)
    const double cnt = static_cast<double>(hi - lo);
    const double sum = s1(hi) - s1(lo);
    return std::max(0.0, (s2(hi) - s2(lo)) - sum * sum / cnt);
  };

  Index best_q = 1;
  double best_ss = group_ss(0, 1) + group_ss(1, L);
  for (Index q = 2; q <= max_d; ++q) {
    const double ss = group_ss(0, q) + group_ss(q, L);
    if (ss < best_ss - 1e-12 * std::max(best_ss, 1.0)) {
      best_ss = ss;
      best_q = q;
    }
  }
  return best_q;
}

}  // namespace netshift
