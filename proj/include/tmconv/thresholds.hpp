#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "automaton.hpp"
#include "env.hpp"
#include "errors.hpp"

namespace tmconv {

/// Granularity bounds delimiting the absorbing action pairs of the
/// one-bit game. Entries are +infinity when the defining denominator
/// vanishes while the numerator does not (the corresponding constraint
/// then never binds).
struct threshold_set {
  double s1, s2, s3, s4, s5, s6;
};

/// Input-bias bounds obtained by solving s_i crossings for c.
struct c_threshold_set {
  double c1, c2, c3, c4;
};

namespace detail {

/// num/den with the conventions: positive/zero -> +infinity, 0/0 -> NaN
/// (the caller decides whether NaN is an error or an empty region).
[[nodiscard]] inline double threshold_ratio(double num, double den) noexcept {
  if (den > 0.0) return num / den;
  if (num > 0.0) return std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

struct raw_thresholds {
  double s1, s2, s3, s4, s5, s6;
};

[[nodiscard]] inline raw_thresholds compute_thresholds(const one_bit_env& env) noexcept {
  const double a = env.a(), b = env.b(), c = env.c();
  const double pos = a * c + b * (1.0 - c);  // P(y = 1)
  return {
      threshold_ratio(pos, a * c + (1.0 - b) * (1.0 - c)),
      threshold_ratio(pos, a * c),
      threshold_ratio(pos, (1.0 - b) * (1.0 - c)),
      threshold_ratio(pos, b * (1.0 - c) + (1.0 - a) * c),
      threshold_ratio(pos, b * (1.0 - c)),
      threshold_ratio(pos, (1.0 - a) * c),
  };
}

}  // namespace detail

/// The six granularity thresholds of an environment. A 0/0 ratio carries
/// no information and raises undefined_threshold_error; use
/// predict_regions when an empty-region treatment is wanted instead.
[[nodiscard]] inline threshold_set thresholds(const one_bit_env& env) {
  const detail::raw_thresholds r = detail::compute_thresholds(env);
  for (double v : {r.s1, r.s2, r.s3, r.s4, r.s5, r.s6})
    if (std::isnan(v))
      throw undefined_threshold_error("thresholds: 0/0 ratio; environment degenerate");
  return {r.s1, r.s2, r.s3, r.s4, r.s5, r.s6};
}

/// Input-bias thresholds; defined for noisy label channels with
/// 0 < a < 1 and 0 < b < 1.
[[nodiscard]] inline c_threshold_set c_thresholds(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
    throw std::invalid_argument("c_thresholds: a and b must lie strictly inside (0, 1)");
  const c_threshold_set out{
      detail::threshold_ratio(1.0 - b, a + 1.0 - b),
      detail::threshold_ratio(b, a + b),
      detail::threshold_ratio(1.0 - b, 2.0 - a - b),
      detail::threshold_ratio(b, 1.0 - a + b),
  };
  for (double v : {out.c1, out.c2, out.c3, out.c4})
    if (std::isnan(v))
      throw undefined_threshold_error("c_thresholds: 0/0 ratio");
  return out;
}

/// Open-interval membership uses this margin on both sides, so values on
/// a threshold boundary never count as inside a region.
inline constexpr double region_boundary_tol = 1e-12;

/// The set of action pairs the game can be absorbed into at a given
/// granularity. Empty means no absorbing pair exists there.
class region_prediction {
public:
  region_prediction() = default;
  region_prediction(bool ee, bool ie, bool ei) : ee_(ee), ie_(ie), ei_(ei) {}

  [[nodiscard]] bool ee() const noexcept { return ee_; }
  [[nodiscard]] bool ie() const noexcept { return ie_; }
  [[nodiscard]] bool ei() const noexcept { return ei_; }

  [[nodiscard]] bool contains(action_pair p) const noexcept {
    switch (p) {
      case action_pair::ee: return ee_;
      case action_pair::ie: return ie_;
      case action_pair::ei: return ei_;
      case action_pair::ii: return false;  // (I,I) is never absorbing
    }
    return false;
  }

  [[nodiscard]] bool empty() const noexcept { return !(ee_ || ie_ || ei_); }
  [[nodiscard]] int size() const noexcept {
    return static_cast<int>(ee_) + static_cast<int>(ie_) + static_cast<int>(ei_);
  }

  bool operator==(const region_prediction&) const = default;

private:
  bool ee_ = false;
  bool ie_ = false;
  bool ei_ = false;
};

/// Which pairs are absorbing at granularity s:
///   (E,E) for 1 < s < min(s1, s4),
///   (I,E) for s2 < s < s6,
///   (E,I) for s5 < s < s3.
/// Intervals are open with a 1e-12 margin; an undefined threshold makes
/// the affected region empty rather than raising.
[[nodiscard]] inline region_prediction predict_regions(const one_bit_env& env, double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("predict_regions: s must be >= 1");
  const detail::raw_thresholds r = detail::compute_thresholds(env);
  const auto inside = [s](double lo, double hi) {
    // NaN endpoints fail both comparisons, leaving the region empty.
    return s - lo > region_boundary_tol && hi - s > region_boundary_tol;
  };
  const double ee_hi = (std::isnan(r.s1) || std::isnan(r.s4)) ? std::numeric_limits<double>::quiet_NaN()
                                                              : std::min(r.s1, r.s4);
  return {inside(1.0, ee_hi), inside(r.s2, r.s6), inside(r.s5, r.s3)};
}

}  // namespace tmconv
