#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace rvseries {

inline double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean_of: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double variance_of(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance_of: need at least two points");
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

/// Order statistic at 1-based ascending rank (ties resolved by rank).
inline double order_statistic(std::span<const double> xs, std::size_t rank) {
  if (rank < 1 || rank > xs.size()) throw std::invalid_argument("order_statistic: rank out of range");
  std::vector<double> copy(xs.begin(), xs.end());
  auto nth = copy.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(copy.begin(), nth, copy.end());
  return *nth;
}

/// Empirical quantile: the order statistic at rank ceil(N*q).
inline double empirical_quantile(std::span<const double> xs, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("empirical_quantile: q outside (0,1]");
  if (xs.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, xs.size());
  return order_statistic(xs, rank);
}

inline double binomial_se(double p_hat, std::size_t n) {
  if (n == 0) throw std::invalid_argument("binomial_se: empty sample");
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma, for chi-square tail probabilities.
// Series expansion for x < a+1, Lentz continued fraction otherwise.
// ---------------------------------------------------------------------------

namespace detail {

inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// P(a,x) = gamma(a,x)/Gamma(a), the regularized lower incomplete gamma.
inline double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_contfrac(a, x);
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
inline double chi_square_tail(double stat, double dof) {
  if (stat <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, stat / 2.0);
}

struct GofResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Pearson chi-square test of equal cell probabilities.
inline GofResult chi_square_uniform_gof(std::span<const std::size_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform_gof: need >= 2 cells");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0.0) throw std::invalid_argument("chi_square_uniform_gof: empty counts");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  GofResult res;
  res.statistic = stat;
  res.dof = static_cast<double>(counts.size() - 1);
  res.p_value = chi_square_tail(stat, res.dof);
  return res;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov
// ---------------------------------------------------------------------------

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample KS distance of a sample against the uniform law on [0,1].
inline double ks_distance_uniform(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_distance_uniform: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = std::clamp(xs[i], 0.0, 1.0);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    d = std::max(d, std::abs(static_cast<double>(i) / n - cdf));
  }
  return d;
}

struct KsTwoSampleResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample KS test with the asymptotic p-value (Stephens' small-sample
/// correction on the effective sample size).
inline KsTwoSampleResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> xs(a.begin(), a.end()), ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const auto na = static_cast<double>(xs.size());
  const auto nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = xs[i], y = ys[j];
    if (x <= y) ++i;
    if (y <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsTwoSampleResult res;
  res.statistic = d;
  const double ne = std::sqrt(na * nb / (na + nb));
  res.p_value = kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
  return res;
}

}  // namespace rvseries
