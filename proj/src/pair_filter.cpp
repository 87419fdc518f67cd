#include "netshift/pair_filter.hpp"

#include "netshift/errors.hpp"
#include "netshift/linalg.hpp"
#include "netshift/rng.hpp"
#include "netshift/shift_test.hpp"
#include "netshift/stats.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

namespace netshift {

namespace {

constexpr double kUpsilonFloor = 1e-12;  // clipped Phat can zero the edge variances

void check_same_n(const Embedding& e1, const Embedding& e2) {
  if (e1.X.rows() != e2.X.rows())
    throw InputError("embeddings must cover the same vertex set");
}

// Row features v_t = vec(u_t u_t^T), one n x d^2 block per network. The
// squared projector entries factor through them: (Q Q^T)_{lt}^2 = v_l . v_t,
// which keeps every contraction below at O(n^2 d^2) without materializing
// Q Q^T itself.
Matd row_features(const Matd& Q) {
  const Index n = Q.rows(), d = Q.cols();
  Matd V(n, d * d);
  for (Index t = 0; t < n; ++t) {
    Index c = 0;
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) V(t, c++) = Q(t, a) * Q(t, b);
  }
  return V;
}

// Shared assembly for the estimated and true variance proxies. Q1/Q2 are
// orthonormal bases of the two position matrices' column spaces, Xi1/Xi2 the
// symmetric edge-variance tables p(1-p). Row k of D = (Xi V) V^T holds the
// diagonal of the one-network projection-variance matrix for vertex k; the
// off-diagonal rule adds both orientations plus the leverage-weighted cross
// term, and the diagonal is pinned to 4x the own-vertex value.
Matd assemble_upsilon(const Matd& Q1, const Matd& Xi1, const Matd& Q2, const Matd& Xi2) {
  const Matd V1 = row_features(Q1);
  const Matd V2 = row_features(Q2);
  Matd D = (Xi1 * V1) * V1.transpose();
  D.noalias() += (Xi2 * V2) * V2.transpose();

  const Vecd pi1 = Q1.rowwise().squaredNorm();
  const Vecd pi2 = Q2.rowwise().squaredNorm();

  Matd U = D + D.transpose();
  U.noalias() += 2.0 * (pi1 * pi1.transpose()).cwiseProduct(Xi1);
  U.noalias() += 2.0 * (pi2 * pi2.transpose()).cwiseProduct(Xi2);
  U.diagonal() = 4.0 * D.diagonal();
  return U;
}

Matd edge_variances(const Matd& P) {
  return (P.array() * (1.0 - P.array())).matrix();
}

// d x d contraction Q^T diag(xi) Q; conjugating a row of Q with it yields one
// diagonal entry of Q Q^T diag(xi) Q Q^T.
Matd contraction(const Matd& Q, const Vecd& xi) {
  return Q.transpose() * xi.asDiagonal() * Q;
}

void check_vertex_pair(Index n, Index k, Index l) {
  if (k < 0 || k >= n || l < 0 || l >= n) throw InputError("vertex index out of range");
}

}  // namespace

Matd upsilon_hat(const Embedding& e1, const Embedding& e2) {
  check_same_n(e1, e2);
  const Matd Xi1 = edge_variances(estimate_probability(e1));
  const Matd Xi2 = edge_variances(estimate_probability(e2));
  return assemble_upsilon(e1.U, Xi1, e2.U, Xi2);
}

double upsilon_hat_entry(const Embedding& e1, const Embedding& e2, Index k, Index l) {
  check_same_n(e1, e2);
  check_vertex_pair(e1.X.rows(), k, l);

  // One projection-variance diagonal entry, (QQ^T diag(xi_{kk}) QQ^T)_{ll,ll},
  // through the d x d contraction instead of the n x n projector.
  auto own_diag = [](const Embedding& e, Index kk, Index ll, Vecd* xi_out) {
    const Vecd p = estimate_probability_row(e, kk);
    const Vecd xi = (p.array() * (1.0 - p.array())).matrix();
    if (xi_out) *xi_out = xi;
    const Matd M = contraction(e.U, xi);
    return (e.U.row(ll) * M * e.U.row(ll).transpose()).value();
  };

  Vecd xk1, xk2;
  const double psi_k_ll = own_diag(e1, k, l, &xk1) + own_diag(e2, k, l, &xk2);
  if (k == l) return 4.0 * psi_k_ll;

  const double psi_l_kk = own_diag(e1, l, k, nullptr) + own_diag(e2, l, k, nullptr);
  const double cross = 2.0 * e1.U.row(k).squaredNorm() * e1.U.row(l).squaredNorm() * xk1(l) +
                       2.0 * e2.U.row(k).squaredNorm() * e2.U.row(l).squaredNorm() * xk2(l);
  return psi_k_ll + psi_l_kk + cross;
}

Matd upsilon_true(const ShiftScenario& scenario) {
  auto basis = [](const Matd& X) {
    Eigen::HouseholderQR<Matd> qr(X);
    Matd Q = qr.householderQ() * Matd::Identity(X.rows(), X.cols());
    return Q;
  };
  const Matd P1 = probability_matrix(scenario.model1);
  const Matd P2 = probability_matrix(scenario.model2);
  return assemble_upsilon(basis(scenario.model1.X), edge_variances(P1),
                          basis(scenario.model2.X), edge_variances(P2));
}

FilterStats ttilde(const Embedding& e1, const Embedding& e2) {
  check_same_n(e1, e2);
  FilterStats stats;
  stats.Delta_hat = estimate_probability(e1) - estimate_probability(e2);
  stats.Upsilon_hat = upsilon_hat(e1, e2).cwiseMax(kUpsilonFloor);
  stats.Ttilde = stats.Delta_hat.cwiseQuotient(stats.Upsilon_hat.cwiseSqrt());
  return stats;
}

double ttilde_entry(const Embedding& e1, const Embedding& e2, Index k, Index l) {
  check_same_n(e1, e2);
  check_vertex_pair(e1.X.rows(), k, l);
  const double delta = estimate_probability_row(e1, k)(l) - estimate_probability_row(e2, k)(l);
  const double ups = std::max(upsilon_hat_entry(e1, e2, k, l), kUpsilonFloor);
  return delta / std::sqrt(ups);
}

double bonferroni_threshold(Index L, double alpha_tilde) {
  if (L < 1) throw InputError("seed size must be at least 1");
  if (!(alpha_tilde > 0.0 && alpha_tilde < 1.0))
    throw InputError("filter level must lie in (0,1)");
  const double pairs = 0.5 * static_cast<double>(L) * static_cast<double>(L + 1);
  const double alpha_b = alpha_tilde / pairs;
  return normal_quantile(1.0 - 0.5 * alpha_b);
}

FilterStats filter_stats(const Embedding& e1, const Embedding& e2, Index L,
                         double alpha_tilde) {
  FilterStats stats = ttilde(e1, e2);
  stats.threshold = bonferroni_threshold(L, alpha_tilde);
  stats.feasible = stats.Ttilde.array().abs() <= stats.threshold;
  return stats;
}

bool candidate_passes(const FilterStats& stats, const IndexVec& S) {
  if (stats.feasible.size() == 0)
    throw InputError("filter stats carry no threshold; build them with filter_stats");
  if (S.empty()) throw InputError("candidate seed set must be nonempty");
  const Index n = stats.feasible.rows();
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 0 || S[i] >= n) throw InputError("candidate vertex index out of range");
    for (std::size_t j = i; j < S.size(); ++j)
      if (!stats.feasible(S[i], S[j])) return false;
  }
  return true;
}

std::vector<IndexVec> sample_feasible_candidates(const FilterStats& stats, Index L, Index M,
                                                 std::uint64_t rng_seed, Index max_restarts,
                                                 SampleDiagnostics* diag) {
  if (stats.feasible.size() == 0)
    throw InputError("filter stats carry no threshold; build them with filter_stats");
  if (L < 1) throw InputError("seed size must be at least 1");
  if (M < 1) throw InputError("candidate count must be at least 1");
  const Index n = stats.feasible.rows();
  if (L > n) throw InputError("seed size exceeds the vertex count");
  if (max_restarts <= 0) max_restarts = 50 * M;

  SampleDiagnostics local;
  SampleDiagnostics& dg = diag ? *diag : local;
  dg = SampleDiagnostics{};

  IndexVec roots;  // vertices allowed in any set at all
  for (Index v = 0; v < n; ++v)
    if (stats.feasible(v, v)) roots.push_back(v);
  if (roots.empty()) {
    dg.no_feasible_start = true;
    return {};
  }

  Rng rng(rng_seed);
  std::set<IndexVec> seen;
  std::vector<IndexVec> out;
  IndexVec members, extensions;

  while (static_cast<Index>(out.size()) < M) {
    members.clear();
    members.push_back(roots[static_cast<std::size_t>(rng.index(static_cast<Index>(roots.size())))]);
    bool dead = false;
    while (static_cast<Index>(members.size()) < L) {
      extensions.clear();
      for (Index v : roots) {
        if (std::find(members.begin(), members.end(), v) != members.end()) continue;
        bool ok = true;
        for (Index u : members)
          if (!stats.feasible(u, v)) {
            ok = false;
            break;
          }
        if (ok) extensions.push_back(v);
      }
      if (extensions.empty()) {
        dead = true;
        break;
      }
      members.push_back(
          extensions[static_cast<std::size_t>(rng.index(static_cast<Index>(extensions.size())))]);
    }

    if (!dead) {
      IndexVec s = members;
      std::sort(s.begin(), s.end());
      if (seen.insert(s).second) {
        out.push_back(std::move(s));
        continue;
      }
    }
    if (++dg.restarts > max_restarts) {
      dg.budget_exhausted = static_cast<Index>(out.size()) < M;
      break;
    }
  }
  return out;
}

}  // namespace netshift
