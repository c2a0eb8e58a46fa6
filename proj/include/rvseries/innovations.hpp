#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvseries/cadlag.hpp"
#include "rvseries/rng.hpp"

namespace rvseries {

/// Power-law tail description: P(|Z| > x) = c * x^{-alpha} for large x,
/// with P(Z > x)/P(|Z| > x) -> p. For the pure Pareto laws generated here
/// the identity is exact above the scale x_m = c^{1/alpha}.
struct TailModel {
  double alpha = 1.0;
  double c = 1.0;
  double p = 1.0;

  TailModel() = default;
  TailModel(double alpha_, double c_, double p_) : alpha(alpha_), c(c_), p(p_) { validate(); }

  static TailModel from_scale(double alpha, double x_m, double p) {
    if (!(alpha > 0.0) || !(x_m > 0.0)) throw std::invalid_argument("TailModel: need alpha > 0, x_m > 0");
    return TailModel(alpha, std::pow(x_m, alpha), p);
  }

  [[nodiscard]] double scale() const { return std::pow(c, 1.0 / alpha); }

  /// P(|Z| > x), exact for x >= scale().
  [[nodiscard]] double abs_tail(double x) const {
    if (x <= scale()) return 1.0;
    return c * std::pow(x, -alpha);
  }

  /// P(Z > x) for x >= scale().
  [[nodiscard]] double upper_tail(double x) const { return p * abs_tail(x); }

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("TailModel: alpha must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("TailModel: c must be > 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("TailModel: p must lie in [0,1]");
  }

  friend bool operator==(const TailModel& a, const TailModel& b) {
    return a.alpha == b.alpha && a.c == b.c && a.p == b.p;
  }
};

/// Pareto quantile x_m * u^{-1/alpha}; the inverse of the exceedance law
/// P(X > x) = (x/x_m)^{-alpha}, x >= x_m.
inline double pareto_quantile(double u, double alpha, double x_m) {
  if (!(alpha > 0.0) || !(x_m > 0.0)) throw std::invalid_argument("pareto_quantile: bad parameters");
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("pareto_quantile: u must lie in (0,1)");
  return x_m * std::pow(u, -1.0 / alpha);
}

inline double pareto_sample(RandomStream& stream, double alpha, double x_m) {
  return pareto_quantile(stream.next_uniform(), alpha, x_m);
}

inline double pareto_sample(StreamKey key, double alpha, double x_m) {
  RandomStream stream(key);
  return pareto_sample(stream, alpha, x_m);
}

/// Chambers-Mallows-Stuck transform: standard alpha-stable variate from a
/// uniform angle theta in (-pi/2, pi/2) and a unit exponential e.
/// For alpha = 2 this reduces to 2 sin(theta) sqrt(e): centered normal with
/// variance 2. For alpha = 1, beta = 0 it is tan(theta): standard Cauchy.
inline double stable_from_angle_exp(double theta, double e, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("stable: alpha must lie in (0,2]");
  if (!(beta >= -1.0 && beta <= 1.0)) throw std::invalid_argument("stable: beta must lie in [-1,1]");
  if (!(e > 0.0)) throw std::invalid_argument("stable: exponential input must be > 0");
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(theta > -half_pi && theta < half_pi))
    throw std::invalid_argument("stable: angle outside (-pi/2, pi/2)");

  if (alpha == 1.0) {
    if (beta == 0.0) return std::tan(theta);
    const double a = half_pi + beta * theta;
    return (a * std::tan(theta) -
            beta * std::log((half_pi * e * std::cos(theta)) / a)) /
           half_pi;
  }
  const double t = beta * std::tan(half_pi * alpha);
  const double shift = std::atan(t) / alpha;
  const double scale = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double s = alpha * (theta + shift);
  return scale * std::sin(s) / std::pow(std::cos(theta), 1.0 / alpha) *
         std::pow(std::cos(theta - s) / e, (1.0 - alpha) / alpha);
}

inline double stable_sample(RandomStream& stream, double alpha, double beta) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double theta = (stream.next_uniform() - 0.5) * 2.0 * half_pi;
  const double e = stream.next_exponential();
  return stable_from_angle_exp(theta, e, alpha, beta);
}

inline double stable_sample(StreamKey key, double alpha, double beta) {
  RandomStream stream(key);
  return stable_sample(stream, alpha, beta);
}

/// Generative model for one i.i.d. innovation process.
struct InnovationSpec {
  enum class Kind {
    pareto_scalar,    // scalar Pareto variate; no path form
    stable_scalar,    // scalar alpha-stable variate; no path form
    compound_poisson, // cumulative sum of signed Pareto jumps at grid times
    single_jump,      // one signed Pareto jump at a uniform grid time >= t_1
    constant_path,    // flat path at a signed Pareto level
  };

  Kind kind = Kind::constant_path;
  TailModel jump_tail;     // alpha, c (scale x_m = c^{1/alpha}), sign weight p
  double rate = 1.0;       // compound Poisson jump intensity
  double beta = 0.0;       // stable skewness
  Grid grid;               // for path kinds

  void validate() const {
    jump_tail.validate();
    switch (kind) {
      case Kind::stable_scalar:
        if (!(jump_tail.alpha <= 2.0))
          throw std::invalid_argument("InnovationSpec: stable requires alpha in (0,2]");
        break;
      case Kind::compound_poisson:
        if (!(rate >= 0.0)) throw std::invalid_argument("InnovationSpec: rate must be >= 0");
        break;
      default:
        break;
    }
  }

  [[nodiscard]] bool is_path_kind() const {
    return kind == Kind::compound_poisson || kind == Kind::single_jump ||
           kind == Kind::constant_path;
  }

  /// Exact scalar upper-tail P(Z(1) > x) where a closed form exists
  /// (single-jump and constant-path marginals are the signed Pareto law).
  [[nodiscard]] double marginal_upper_tail(double x) const {
    if (kind == Kind::single_jump || kind == Kind::constant_path || kind == Kind::pareto_scalar)
      return jump_tail.upper_tail(x);
    throw std::invalid_argument("InnovationSpec: no closed-form marginal tail for this kind");
  }
};

inline const char* to_string(InnovationSpec::Kind kind) {
  switch (kind) {
    case InnovationSpec::Kind::pareto_scalar: return "pareto-scalar";
    case InnovationSpec::Kind::stable_scalar: return "stable-scalar";
    case InnovationSpec::Kind::compound_poisson: return "compound-poisson";
    case InnovationSpec::Kind::single_jump: return "single-jump";
    case InnovationSpec::Kind::constant_path: return "constant-path";
  }
  return "?";
}

namespace detail {

/// Uniform jump time snapped to the nearest grid point t_k with k >= 1.
inline std::size_t draw_jump_index(RandomStream& stream, Grid grid) {
  const double u = stream.next_uniform();
  auto k = static_cast<std::size_t>(std::llround(u * grid.m));
  return std::clamp<std::size_t>(k, 1, grid.m);
}

inline double signed_pareto(RandomStream& stream, const TailModel& tail) {
  const double sign = stream.next_sign(tail.p);
  return sign * pareto_sample(stream, tail.alpha, tail.scale());
}

}  // namespace detail

/// Compound Poisson step path: N ~ Poisson(rate) signed Pareto jumps at
/// uniform grid times, accumulated left to right. Z(0) = 0.
inline void compound_poisson_path_into(StreamKey key, Grid grid, double rate,
                                       const TailModel& jump_tail, CadlagPath& out) {
  if (!(rate >= 0.0)) throw std::invalid_argument("compound_poisson_path: rate must be >= 0");
  jump_tail.validate();
  out.grid = grid;
  out.values.assign(grid.points(), 0.0);
  RandomStream stream(key);
  const std::uint64_t n = stream.next_poisson(rate);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::size_t k = detail::draw_jump_index(stream, grid);
    const double jump = detail::signed_pareto(stream, jump_tail);
    out.values[k] += jump;
  }
  double acc = 0.0;
  for (double& v : out.values) {
    acc += v;
    v = acc;
  }
}

inline CadlagPath compound_poisson_path(StreamKey key, Grid grid, double rate,
                                        const TailModel& jump_tail) {
  CadlagPath out;
  compound_poisson_path_into(key, grid, rate, jump_tail, out);
  return out;
}

/// Single signed Pareto jump J at a uniform grid time tau in {t_1..t_m}:
/// Z = J * 1_{[tau,1]}, so the sup-norm is exactly |J|.
inline void single_jump_path_into(StreamKey key, Grid grid, const TailModel& jump_tail,
                                  CadlagPath& out) {
  jump_tail.validate();
  out.grid = grid;
  out.values.assign(grid.points(), 0.0);
  RandomStream stream(key);
  // Discrete uniform jump index on {1..m}.
  const std::size_t k = 1 + std::min<std::size_t>(
      static_cast<std::size_t>(stream.next_uniform() * grid.m), grid.m - 1);
  const double jump = detail::signed_pareto(stream, jump_tail);
  for (std::size_t i = k; i < out.values.size(); ++i) out.values[i] = jump;
}

inline CadlagPath single_jump_path(StreamKey key, Grid grid, const TailModel& jump_tail) {
  CadlagPath out;
  single_jump_path_into(key, grid, jump_tail, out);
  return out;
}

/// Draw one path innovation into a reusable buffer.
inline void draw_path_into(StreamKey key, const InnovationSpec& spec, CadlagPath& out) {
  spec.validate();
  switch (spec.kind) {
    case InnovationSpec::Kind::compound_poisson:
      compound_poisson_path_into(key, spec.grid, spec.rate, spec.jump_tail, out);
      return;
    case InnovationSpec::Kind::single_jump:
      single_jump_path_into(key, spec.grid, spec.jump_tail, out);
      return;
    case InnovationSpec::Kind::constant_path: {
      RandomStream stream(key);
      const double level = detail::signed_pareto(stream, spec.jump_tail);
      out.grid = spec.grid;
      out.values.assign(spec.grid.points(), level);
      return;
    }
    default:
      throw std::invalid_argument("draw_path: innovation kind has no path form");
  }
}

inline CadlagPath draw_path(StreamKey key, const InnovationSpec& spec) {
  CadlagPath out;
  draw_path_into(key, spec, out);
  return out;
}

/// `count` i.i.d. draws; element j uses the lineage key.child(j) and is
/// reproducible in isolation.
inline std::vector<CadlagPath> iid_panel(StreamKey key, const InnovationSpec& spec,
                                         std::size_t count) {
  if (count < 1) throw std::invalid_argument("iid_panel: count must be >= 1");
  std::vector<CadlagPath> panel(count);
  for (std::size_t j = 0; j < count; ++j) draw_path_into(key.child(j), spec, panel[j]);
  return panel;
}

}  // namespace rvseries
