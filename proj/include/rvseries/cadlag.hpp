#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rvseries/common.hpp"

namespace rvseries {

/// Uniform grid on [0,1] with m subintervals; points t_k = k/m, k = 0..m.
struct Grid {
  std::uint32_t m = 1;

  constexpr Grid() = default;
  explicit constexpr Grid(std::uint32_t subintervals) : m(subintervals) {
    if (m < 1) throw std::invalid_argument("Grid: need at least one subinterval");
  }

  [[nodiscard]] constexpr std::size_t points() const { return static_cast<std::size_t>(m) + 1; }
  [[nodiscard]] constexpr double point(std::size_t k) const {
    return static_cast<double>(k) / static_cast<double>(m);
  }

  friend constexpr bool operator==(Grid a, Grid b) { return a.m == b.m; }
  friend constexpr bool operator!=(Grid a, Grid b) { return a.m != b.m; }
};

/// Right-continuous step function on [0,1] sampled on a uniform grid:
/// x(t) = values[floor(t*m)] for t in [t_k, t_{k+1}), x(1) = values[m].
/// Values must be finite; operations treat paths as immutable values.
struct CadlagPath {
  Grid grid;
  std::vector<double> values;

  CadlagPath() : values(2, 0.0) {}

  CadlagPath(Grid g, std::vector<double> vals) : grid(g), values(std::move(vals)) {
    check_invariants();
  }

  static CadlagPath zero(Grid g) { return constant(g, 0.0); }

  static CadlagPath constant(Grid g, double level) {
    CadlagPath p;
    p.grid = g;
    p.values.assign(g.points(), level);
    p.check_invariants();
    return p;
  }

  /// Indicator-style step path: level * 1_{[t_k0, 1]}.
  static CadlagPath step(Grid g, std::size_t k0, double level) {
    if (k0 > g.m) throw std::invalid_argument("CadlagPath::step: index beyond grid");
    CadlagPath p = zero(g);
    for (std::size_t k = k0; k < p.values.size(); ++k) p.values[k] = level;
    return p;
  }

  [[nodiscard]] double at(std::size_t k) const { return values[k]; }

  /// Evaluate the step function at time t in [0,1].
  [[nodiscard]] double operator()(double t) const {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("CadlagPath: t outside [0,1]");
    auto k = static_cast<std::size_t>(t * grid.m);
    if (k > grid.m) k = grid.m;
    return values[k];
  }

  [[nodiscard]] double end_value() const { return values.back(); }

  void check_invariants() const {
    if (values.size() != grid.points())
      throw std::invalid_argument("CadlagPath: value count does not match grid");
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("CadlagPath: non-finite value");
  }
};

inline void require_same_grid(const CadlagPath& a, const CadlagPath& b) {
  if (a.grid != b.grid) throw std::invalid_argument("grid mismatch");
}

inline double sup_norm(const CadlagPath& x) {
  double best = 0.0;
  for (double v : x.values) best = std::max(best, std::abs(v));
  return best;
}

namespace detail {

/// Number of grid steps spanned by a time window of width delta.
inline std::size_t window_steps(const Grid& g, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("modulus: delta must be > 0");
  double w = std::floor(delta * g.m + 1e-9);
  if (w >= g.m) return g.m;
  return static_cast<std::size_t>(w);
}

}  // namespace detail

/// Oscillation over all grid pairs within a delta time window:
/// sup over |t_k - t_l| <= delta of |x(t_k) - x(t_l)|. O(m) via monotone
/// sliding-window extrema.
inline double modulus_of_continuity(const CadlagPath& x, double delta) {
  const std::size_t w = detail::window_steps(x.grid, delta);
  if (w == 0) return 0.0;
  const auto& v = x.values;
  const std::size_t n = v.size();
  std::deque<std::size_t> maxq, minq;
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    while (!maxq.empty() && v[maxq.back()] <= v[k]) maxq.pop_back();
    maxq.push_back(k);
    while (!minq.empty() && v[minq.back()] >= v[k]) minq.pop_back();
    minq.push_back(k);
    if (k >= w + 1) {
      const std::size_t lo = k - w;
      while (maxq.front() < lo) maxq.pop_front();
      while (minq.front() < lo) minq.pop_front();
    }
    if (k >= w) best = std::max(best, v[maxq.front()] - v[minq.front()]);
  }
  return best;
}

/// Two-sided oscillation minimum over grid triples k1 <= k <= k2 with
/// t_{k2} - t_{k1} <= delta:
///   sup min(|x(t_k) - x(t_k1)|, |x(t_k2) - x(t_k)|).
/// Vanishes on paths with a single jump; detects clustered jumps.
///
/// Cost is O(m * w), w = floor(delta*m): for each left endpoint k1 the
/// inner max over k2 collapses to suffix extrema, since
/// max_{k2} min(a, |x_{k2}-x_k|) = min(a, max_{k2} |x_{k2}-x_k|).
inline double cadlag_modulus(const CadlagPath& x, double delta) {
  const std::size_t w = detail::window_steps(x.grid, delta);
  if (w == 0) return 0.0;
  const auto& v = x.values;
  const std::size_t n = v.size();
  std::vector<double> sufmax(w + 1), sufmin(w + 1);
  double best = 0.0;
  for (std::size_t k1 = 0; k1 + 2 <= n; ++k1) {
    const std::size_t hi = std::min(k1 + w, n - 1);
    const std::size_t len = hi - k1;
    sufmax[len] = v[hi];
    sufmin[len] = v[hi];
    for (std::size_t i = len; i-- > 0;) {
      sufmax[i] = std::max(v[k1 + i], sufmax[i + 1]);
      sufmin[i] = std::min(v[k1 + i], sufmin[i + 1]);
    }
    for (std::size_t k = k1; k <= hi; ++k) {
      const double left = std::abs(v[k] - v[k1]);
      if (left <= best) continue;
      const std::size_t i = k - k1;
      const double reach = std::max(sufmax[i] - v[k], v[k] - sufmin[i]);
      best = std::max(best, std::min(left, reach));
    }
  }
  return best;
}

/// Oscillation over the grid points inside the half-open interval [lo, hi):
/// sup over s,t in the interval of |x(s) - x(t)|; 0 when at most one grid
/// point falls inside.
inline double oscillation_on(const CadlagPath& x, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 + 1e-12 && lo < hi))
    throw std::invalid_argument("oscillation_on: invalid interval");
  const auto m = static_cast<double>(x.grid.m);
  auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(lo * m - 1e-9)));
  // Largest k with k/m < hi.
  double upper = std::ceil(hi * m - 1e-9) - 1.0;
  if (upper < static_cast<double>(first)) return 0.0;
  auto last = static_cast<std::size_t>(std::min(upper, m));
  double vmax = x.values[first], vmin = x.values[first];
  for (std::size_t k = first; k <= last; ++k) {
    vmax = std::max(vmax, x.values[k]);
    vmin = std::min(vmin, x.values[k]);
  }
  return vmax - vmin;
}

inline CadlagPath pointwise_product(const CadlagPath& psi, const CadlagPath& x) {
  require_same_grid(psi, x);
  CadlagPath out = psi;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= x.values[k];
  return out;
}

inline CadlagPath add(const CadlagPath& x, const CadlagPath& y) {
  require_same_grid(x, y);
  CadlagPath out = x;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += y.values[k];
  return out;
}

inline CadlagPath scale(const CadlagPath& x, double s) {
  CadlagPath out = x;
  for (double& v : out.values) v *= s;
  return out;
}

/// CSV serialization: header `t,value`, one row per grid point, ordered by t.
inline void write_csv(const CadlagPath& x, std::ostream& os) {
  os << "t,value\n";
  for (std::size_t k = 0; k < x.values.size(); ++k)
    os << format_double(x.grid.point(k)) << ',' << format_double(x.values[k]) << '\n';
}

}  // namespace rvseries
