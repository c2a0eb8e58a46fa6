#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "rvseries/rng.hpp"

namespace rvseries {

/// Bounded-support scalar laws used for coefficient drivers and product
/// multipliers. Bounded support keeps every absolute moment finite.
struct ScalarLaw {
  enum class Kind { constant, uniform };

  Kind kind = Kind::constant;
  double value = 1.0;  // constant level
  double lo = 0.0;     // uniform bounds
  double hi = 1.0;

  static ScalarLaw constant(double v) {
    ScalarLaw l;
    l.kind = Kind::constant;
    l.value = v;
    return l;
  }

  static ScalarLaw uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("ScalarLaw::uniform: need lo < hi");
    ScalarLaw l;
    l.kind = Kind::uniform;
    l.lo = lo;
    l.hi = hi;
    return l;
  }

  [[nodiscard]] double sample(RandomStream& stream) const {
    switch (kind) {
      case Kind::constant:
        return value;
      case Kind::uniform:
        return lo + (hi - lo) * stream.next_uniform();
    }
    throw std::logic_error("ScalarLaw: unknown kind");
  }

  /// E|Y|^q, exact. For the uniform law this is the closed-form power
  /// integral (b^{q+1}-a^{q+1}) / ((b-a)(q+1)) when the support does not
  /// straddle zero.
  [[nodiscard]] double abs_moment(double q) const {
    if (!(q > 0.0)) throw std::invalid_argument("ScalarLaw::abs_moment: q must be > 0");
    switch (kind) {
      case Kind::constant:
        return std::pow(std::abs(value), q);
      case Kind::uniform: {
        auto primitive = [q](double y) { return std::pow(y, q + 1.0) / (q + 1.0); };
        const double width = hi - lo;
        if (lo >= 0.0) return (primitive(hi) - primitive(lo)) / width;
        if (hi <= 0.0) return (primitive(-lo) - primitive(-hi)) / width;
        return (primitive(hi) + primitive(-lo)) / width;
      }
    }
    throw std::logic_error("ScalarLaw: unknown kind");
  }

  [[nodiscard]] double max_abs() const {
    if (kind == Kind::constant) return std::abs(value);
    return std::max(std::abs(lo), std::abs(hi));
  }

  [[nodiscard]] std::string describe() const {
    if (kind == Kind::constant) return "constant(" + std::to_string(value) + ")";
    return "uniform(" + std::to_string(lo) + "," + std::to_string(hi) + ")";
  }

  friend bool operator==(const ScalarLaw& a, const ScalarLaw& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::constant) return a.value == b.value;
    return a.lo == b.lo && a.hi == b.hi;
  }
};

}  // namespace rvseries
