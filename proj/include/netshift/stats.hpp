#pragma once

#include "netshift/errors.hpp"
#include "netshift/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace netshift {

// Regularized lower incomplete gamma P(a, x). Series expansion below the
// ridge x < a+1, Lentz continued fraction above; both converge to ~1e-15
// relative for the chi-square arguments used here.
inline double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw InputError("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Continued fraction for Q(a, x); P = 1 - Q.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

// CDF of the chi-square distribution with k degrees of freedom.
inline double chi2_cdf(double x, double k) {
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * k, 0.5 * x);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Standard normal quantile: Acklam's rational initializer polished with one
// Halley step against erfc, giving full double precision.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("normal_quantile: p must lie in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2); the theta-dual form is used
// for small x where the alternating series converges slowly.
inline double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.0) {
    const double t = M_PI * M_PI / (8.0 * x * x);
    double s = 0.0;
    for (int j = 1; j <= 20; j += 2) s += std::exp(-t * j * j);
    return 1.0 - std::sqrt(2.0 * M_PI) / x * s;
  }
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    s += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return 2.0 * s;
}

// Benjamini-Hochberg step-up selection. Rejects the j* smallest p-values
// where j* = max{j : p_(j) <= j*alpha/n} (0 if none); ties in p are broken by
// vertex index so the rejection set is deterministic.
struct BhResult {
  IndexVec rejected;  // sorted by vertex index
  IndexVec kept;      // complement, sorted
};

inline BhResult benjamini_hochberg(const std::vector<double>& p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("benjamini_hochberg: alpha must lie in (0,1)");
  if (p.empty()) throw InputError("benjamini_hochberg: empty p-value vector");
  const Index n = static_cast<Index>(p.size());
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("benjamini_hochberg: p-values must lie in [0,1]");

  IndexVec order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index i, Index j) {
    return p[static_cast<std::size_t>(i)] != p[static_cast<std::size_t>(j)]
               ? p[static_cast<std::size_t>(i)] < p[static_cast<std::size_t>(j)]
               : i < j;
  });

  Index jstar = 0;
  for (Index j = n; j >= 1; --j) {
    if (p[static_cast<std::size_t>(order[static_cast<std::size_t>(j - 1)])] <=
        alpha * static_cast<double>(j) / static_cast<double>(n)) {
      jstar = j;
      break;
    }
  }

  BhResult r;
  r.rejected.assign(order.begin(), order.begin() + jstar);
  r.kept.assign(order.begin() + jstar, order.end());
  std::sort(r.rejected.begin(), r.rejected.end());
  std::sort(r.kept.begin(), r.kept.end());
  return r;
}

}  // namespace netshift
