#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvseries/cadlag.hpp"
#include "rvseries/innovations.hpp"
#include "rvseries/rng.hpp"
#include "rvseries/scalar_law.hpp"

namespace rvseries {

/// Generative family for the coefficient sequence (psi_j)_{j>=1}.
///
/// Indexing convention used everywhere in this library: j starts at 1 and
/// psi_1 is the coefficient of the present innovation. Product families use
/// the empty-product convention psi_1 == 1.
struct CoefficientFamily {
  enum class Kind {
    deterministic_geometric, // psi_j = a^{j-1} * profile
    sre_product,             // psi_1 = 1, psi_j = prod_{k<j} Y_k, Y i.i.d. scalars
    bilinear_product,        // psi_1 = 1, psi_j = prod_{k<j} W_k, W_k = linked innovation marginal
    finite_list,             // explicit constant levels; psi_j = 0 beyond the list
  };

  Kind kind = Kind::deterministic_geometric;
  Grid grid;

  double ratio = 0.5;                       // deterministic geometric, |ratio| < 1
  ScalarLaw y_law = ScalarLaw::constant(0.5);  // SRE driver law
  std::optional<CadlagPath> profile;        // optional spatial profile multiplying psi_j
  std::optional<InnovationSpec> linked;     // bilinear: the innovation whose marginals drive psi
  std::vector<double> levels;               // finite list of constant path levels

  // Memory guard for generation requests.
  static constexpr std::size_t kMaxTerms = 10000;

  void validate() const {
    switch (kind) {
      case Kind::deterministic_geometric:
        if (!(std::abs(ratio) < 1.0))
          throw std::invalid_argument("CoefficientFamily: geometric ratio must satisfy |a| < 1");
        break;
      case Kind::sre_product:
        break;
      case Kind::bilinear_product:
        if (!linked) throw std::invalid_argument("CoefficientFamily: bilinear needs a linked innovation");
        linked->validate();
        if (!linked->is_path_kind())
          throw std::invalid_argument("CoefficientFamily: linked innovation must be a path kind");
        break;
      case Kind::finite_list:
        if (levels.empty()) throw std::invalid_argument("CoefficientFamily: empty finite list");
        break;
    }
    if (profile) {
      profile->check_invariants();
      if (profile->grid != grid) throw std::invalid_argument("CoefficientFamily: profile grid mismatch");
    }
  }
};

inline const char* to_string(CoefficientFamily::Kind kind) {
  switch (kind) {
    case CoefficientFamily::Kind::deterministic_geometric: return "deterministic-geometric";
    case CoefficientFamily::Kind::sre_product: return "sre-product";
    case CoefficientFamily::Kind::bilinear_product: return "bilinear-product";
    case CoefficientFamily::Kind::finite_list: return "finite-list";
  }
  return "?";
}

/// Incremental generator of psi_1, psi_2, ... for one series draw.
///
/// The key passed here is the per-draw series key; scalar drivers use the
/// coefficient lane and bilinear drivers redraw the linked innovation from
/// the innovation lane, so a series built from the same key sees exactly
/// the innovations whose marginals drive its coefficients.
class CoefficientSequence {
 public:
  CoefficientSequence(StreamKey series_key, const CoefficientFamily& family)
      : family_(&family), series_key_(series_key) {
    family.validate();
    if (scalar_mode()) scalar_state_ = 1.0;
  }

  /// Coefficients without a profile are constant in t; next_scalar() is
  /// then the cheap path.
  [[nodiscard]] bool scalar_mode() const {
    return !family_->profile.has_value() &&
           family_->kind != CoefficientFamily::Kind::finite_list;
  }

  /// Scalar level of psi_j for the next j (valid when scalar_mode()).
  double next_scalar() {
    ++j_;
    switch (family_->kind) {
      case CoefficientFamily::Kind::deterministic_geometric: {
        const double v = scalar_state_;
        scalar_state_ *= family_->ratio;
        return v;
      }
      case CoefficientFamily::Kind::sre_product: {
        const double v = scalar_state_;
        RandomStream stream(series_key_.child(lane::coefficient).child(static_cast<std::uint64_t>(j_)));
        scalar_state_ *= family_->y_law.sample(stream);
        return v;
      }
      case CoefficientFamily::Kind::bilinear_product: {
        const double v = scalar_state_;
        CadlagPath z = draw_path(
            series_key_.child(lane::innovation).child(static_cast<std::uint64_t>(j_)),
            *family_->linked);
        scalar_state_ *= z.end_value();
        return v;
      }
      case CoefficientFamily::Kind::finite_list:
        throw std::logic_error("CoefficientSequence: finite list is not scalar mode");
    }
    throw std::logic_error("CoefficientSequence: unknown kind");
  }

  /// Materialize psi_j for the next j into `out`.
  void next_path(CadlagPath& out) {
    if (family_->kind == CoefficientFamily::Kind::finite_list) {
      ++j_;
      const auto idx = static_cast<std::size_t>(j_ - 1);
      const double level = idx < family_->levels.size() ? family_->levels[idx] : 0.0;
      out.grid = family_->grid;
      out.values.assign(family_->grid.points(), level);
      return;
    }
    const double level = next_scalar();
    out.grid = family_->grid;
    if (family_->profile) {
      out.values.resize(family_->grid.points());
      for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] = level * family_->profile->values[k];
    } else {
      out.values.assign(family_->grid.points(), level);
    }
  }

  [[nodiscard]] std::uint64_t index() const { return j_; }

 private:
  const CoefficientFamily* family_;
  StreamKey series_key_;
  std::uint64_t j_ = 0;
  double scalar_state_ = 1.0;
};

/// Materialized coefficient draw: psi_1..psi_J plus the driver values that
/// determined them (empty for deterministic families).
struct CoefficientDraw {
  std::vector<CadlagPath> psis;
  std::vector<double> drivers;  // Y_k (SRE) or linked-innovation marginals (bilinear)
};

inline CoefficientDraw generate_coefficients(StreamKey key, const CoefficientFamily& family,
                                             std::size_t terms) {
  if (terms < 1) throw std::invalid_argument("generate_coefficients: need at least one term");
  if (terms > CoefficientFamily::kMaxTerms)
    throw std::invalid_argument("generate_coefficients: term count exceeds hard cap");
  family.validate();
  CoefficientDraw draw;
  draw.psis.resize(terms);
  CoefficientSequence seq(key, family);
  double previous = 1.0;
  for (std::size_t j = 0; j < terms; ++j) {
    seq.next_path(draw.psis[j]);
    if (j > 0 && (family.kind == CoefficientFamily::Kind::sre_product ||
                  family.kind == CoefficientFamily::Kind::bilinear_product)) {
      // Recover the driver from the running product; exact for nonzero state.
      const double current = family.profile ? draw.psis[j].values[0] / family.profile->values[0]
                                            : draw.psis[j].values[0];
      draw.drivers.push_back(previous != 0.0 ? current / previous : 0.0);
      previous = current;
    }
  }
  return draw;
}

/// CSV export `j,t,value` of a coefficient panel, for debugging.
inline void write_coefficients_csv(const CoefficientDraw& draw, std::ostream& os) {
  os << "j,t,value\n";
  for (std::size_t j = 0; j < draw.psis.size(); ++j) {
    const auto& p = draw.psis[j];
    for (std::size_t k = 0; k < p.values.size(); ++k)
      os << (j + 1) << ',' << format_double(p.grid.point(k)) << ','
         << format_double(p.values[k]) << '\n';
  }
}

/// Monte Carlo evidence for the support condition: at every grid point,
/// some psi_j with j <= head_terms must be nonzero with positive
/// probability.
struct SupportCheck {
  bool pass = false;
  std::vector<double> hit_probability;    // per grid point
  std::vector<std::size_t> failing_points;  // grid indices with zero hits
  std::size_t replicates = 0;
};

inline SupportCheck nonzero_support_check(const CoefficientFamily& family, std::size_t head_terms,
                                          StreamKey key, std::size_t replicates = 256) {
  if (head_terms < 1) throw std::invalid_argument("nonzero_support_check: head must be >= 1");
  family.validate();
  const std::size_t points = family.grid.points();
  std::vector<std::size_t> hits(points, 0);
  for (std::size_t r = 0; r < replicates; ++r) {
    const CoefficientDraw draw = generate_coefficients(key.child(r), family, head_terms);
    for (std::size_t k = 0; k < points; ++k) {
      for (const auto& psi : draw.psis) {
        if (psi.values[k] != 0.0) {
          ++hits[k];
          break;
        }
      }
    }
  }
  SupportCheck out;
  out.replicates = replicates;
  out.hit_probability.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    out.hit_probability[k] = static_cast<double>(hits[k]) / static_cast<double>(replicates);
    if (hits[k] == 0) out.failing_points.push_back(k);
  }
  out.pass = out.failing_points.empty();
  return out;
}

/// Parameters for the moment-condition check.
struct MomentCheckSpec {
  double alpha = 1.5;
  double gamma = 0.25;
  std::size_t head_terms = 1;    // m in the head condition
  std::size_t replicates = 512;  // Monte Carlo sample size
  std::size_t max_terms = 200;   // truncation of the tail sums

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("MomentCheckSpec: alpha must be > 0");
    if (!(gamma > 0.0 && gamma < alpha))
      throw std::invalid_argument("MomentCheckSpec: gamma must lie in (0,alpha)");
    if (head_terms < 1 || max_terms < head_terms)
      throw std::invalid_argument("MomentCheckSpec: need 1 <= head <= max terms");
  }
};

enum class MomentRegime { fractional, boundary, square };

inline const char* to_string(MomentRegime r) {
  switch (r) {
    case MomentRegime::fractional: return "alpha in (0,1)u(1,2)";
    case MomentRegime::boundary: return "alpha in {1,2}";
    case MomentRegime::square: return "alpha > 2";
  }
  return "?";
}

/// Truncated Monte Carlo estimates of the regime-specific moment sums,
/// plus a geometric-decay diagnostic on j -> E||psi_j||^{alpha+gamma}.
///
/// This is evidence, not proof: finiteness of an expectation is not
/// decidable from samples, and the result says so via `heuristic`.
struct MomentCheck {
  MomentRegime regime = MomentRegime::fractional;
  double head_sum = 0.0;       // sum_{j<=m} E||psi_j||^{alpha-gamma}
  double tail_sum = 0.0;       // regime-specific truncated estimate
  std::vector<double> term_moments;  // E||psi_j||^{alpha+gamma} per j
  double decay_ratio = 1.0;    // mean consecutive ratio over the last terms
  bool pass = false;
  bool heuristic = true;
};

inline MomentCheck moment_regime_check(const CoefficientFamily& family, const MomentCheckSpec& spec,
                                       StreamKey key) {
  spec.validate();
  family.validate();
  const double a = spec.alpha, g = spec.gamma;
  MomentCheck out;
  if (a == 1.0 || a == 2.0)
    out.regime = MomentRegime::boundary;
  else if (a > 2.0)
    out.regime = MomentRegime::square;
  else
    out.regime = MomentRegime::fractional;

  const std::size_t terms = spec.max_terms;
  std::vector<double> sum_low(terms, 0.0), sum_high(terms, 0.0);
  double tail_accum = 0.0;
  CadlagPath scratch;
  for (std::size_t r = 0; r < spec.replicates; ++r) {
    CoefficientSequence seq(key.child(r), family);
    double low_power_sum = 0.0;   // sum_j ||psi_j||^{alpha-gamma}
    double square_sum = 0.0;      // sum_j ||psi_j||^2
    for (std::size_t j = 0; j < terms; ++j) {
      double norm;
      if (seq.scalar_mode()) {
        norm = std::abs(seq.next_scalar());
      } else {
        seq.next_path(scratch);
        norm = sup_norm(scratch);
      }
      sum_low[j] += std::pow(norm, a - g);
      sum_high[j] += std::pow(norm, a + g);
      low_power_sum += std::pow(norm, a - g);
      square_sum += norm * norm;
    }
    if (out.regime == MomentRegime::boundary)
      tail_accum += std::pow(low_power_sum, (a + g) / (a - g));
    else if (out.regime == MomentRegime::square)
      tail_accum += std::pow(square_sum, (a + g) / 2.0);
  }
  const auto n = static_cast<double>(spec.replicates);
  out.term_moments.resize(terms);
  for (std::size_t j = 0; j < terms; ++j) out.term_moments[j] = sum_high[j] / n;

  out.head_sum = 0.0;
  for (std::size_t j = 0; j < spec.head_terms; ++j) out.head_sum += sum_low[j] / n;

  if (out.regime == MomentRegime::fractional) {
    out.tail_sum = 0.0;
    for (std::size_t j = 0; j < terms; ++j) out.tail_sum += out.term_moments[j];
  } else {
    out.tail_sum = tail_accum / n;
  }

  // Decay diagnostic: mean ratio of consecutive E||psi_j||^{alpha+gamma}
  // over the trailing window; an all-zero tail is summable by inspection.
  const std::size_t window = std::min<std::size_t>(10, terms / 2 == 0 ? 1 : terms / 2);
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  bool tail_zero = true;
  for (std::size_t j = terms - window; j < terms; ++j) {
    if (out.term_moments[j] != 0.0) tail_zero = false;
    if (j > 0 && out.term_moments[j - 1] > 0.0) {
      ratio_sum += out.term_moments[j] / out.term_moments[j - 1];
      ++ratio_count;
    }
  }
  out.decay_ratio = ratio_count > 0 ? ratio_sum / static_cast<double>(ratio_count) : 1.0;
  const bool summable = tail_zero || out.decay_ratio < 0.995;
  out.pass = std::isfinite(out.head_sum) && std::isfinite(out.tail_sum) && summable;
  return out;
}

}  // namespace rvseries
