#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rvseries {

namespace detail {

// SplitMix64 finalizer (Vigna). Full-avalanche 64-bit mixer; the stream
// below is exactly the SplitMix64 sequence seeded at an arbitrary point.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

/// Identity of a random substream: a master seed plus a lineage of
/// nonnegative indices (replicate, lane, term index, ...). Keys with equal
/// lineage produce identical draws; splitting is a pure hash of the
/// lineage, so values never depend on scheduling or worker count.
class StreamKey {
 public:
  explicit constexpr StreamKey(std::uint64_t master_seed)
      : digest_(detail::mix64(master_seed ^ 0x5bf03635ab5f2c90ULL)) {}

  /// Extend the lineage by one component.
  [[nodiscard]] constexpr StreamKey child(std::uint64_t index) const {
    StreamKey k(*this);
    k.digest_ = detail::mix64(digest_ + detail::mix64(index));
    return k;
  }

  [[nodiscard]] constexpr std::uint64_t digest() const { return digest_; }

  friend constexpr bool operator==(StreamKey a, StreamKey b) { return a.digest_ == b.digest_; }

 private:
  std::uint64_t digest_;
};

// Lineage lane constants shared by the generation modules. A series draw
// scopes innovations, coefficient drivers, and auxiliary estimator draws
// into disjoint sublineages so adding terms never perturbs other lanes.
namespace lane {
constexpr std::uint64_t innovation = 1;
constexpr std::uint64_t coefficient = 2;
constexpr std::uint64_t aux = 3;
}  // namespace lane

/// Counter-based uniform stream: draw i is mix64(base + i*golden), a pure
/// function of (key, draw counter).
class RandomStream {
 public:
  explicit constexpr RandomStream(StreamKey key) : base_(key.digest()) {}

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return detail::mix64(base_ + counter_ * detail::kGolden);
  }

  /// Uniform on the open interval (0,1); endpoints are unreachable.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with rate 1.
  double next_exponential() { return -std::log(next_uniform()); }

  /// Poisson count via Knuth's product method; intended for small rates.
  std::uint64_t next_poisson(double rate) {
    if (rate < 0.0) throw std::invalid_argument("next_poisson: rate must be >= 0");
    if (rate == 0.0) return 0;
    const double limit = std::exp(-rate);
    std::uint64_t n = 0;
    double prod = next_uniform();
    while (prod > limit) {
      ++n;
      prod *= next_uniform();
    }
    return n;
  }

  /// +1 with probability p, otherwise -1.
  double next_sign(double p) { return next_uniform() < p ? 1.0 : -1.0; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace rvseries
