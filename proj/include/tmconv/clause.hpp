#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "feedback_tables.hpp"
#include "rng.hpp"

namespace tmconv {

/// Empty-clause convention: during training an empty clause evaluates to
/// 1 (so learning can bootstrap), during testing to 0 (so it never votes).
enum class clause_phase : std::uint8_t { training, testing };

/// One labelled example: input bits and a binary label.
struct sample {
  std::vector<std::uint8_t> x;
  std::uint8_t y = 0;
};

enum class tm_architecture : std::uint8_t { dnf, voting };

/// Machine-level configuration. Only width 1 is exercised by the
/// convergence lab, but the clause machinery is width-generic.
struct tm_config {
  int clause_count = 1;
  double granularity = 1.0;
  int depth = 1;
  tm_architecture architecture = tm_architecture::dnf;
  int input_width = 1;
};

inline void validate(const tm_config& cfg) {
  if (cfg.clause_count < 1) throw std::invalid_argument("tm_config: clause_count must be >= 1");
  if (!(cfg.granularity >= 1.0)) throw std::invalid_argument("tm_config: granularity must be >= 1");
  if (cfg.depth < 1) throw std::invalid_argument("tm_config: depth must be >= 1");
  if (cfg.input_width < 1) throw std::invalid_argument("tm_config: input_width must be >= 1");
}

/// The team of 2*width automata deciding literal membership for one
/// clause. Automaton 2k guards input bit k, automaton 2k+1 its negation.
class clause_team {
public:
  explicit clause_team(std::vector<automaton> automata) : tas_(std::move(automata)) {
    if (tas_.empty() || tas_.size() % 2 != 0)
      throw std::invalid_argument("clause_team: need 2*width automata");
    for (const automaton& a : tas_)
      if (a.depth() != tas_.front().depth())
        throw std::invalid_argument("clause_team: all automata must share one depth");
  }

  [[nodiscard]] int width() const noexcept { return static_cast<int>(tas_.size()) / 2; }
  [[nodiscard]] int depth() const noexcept { return tas_.front().depth(); }
  [[nodiscard]] std::span<const automaton> automata() const noexcept { return tas_; }

  [[nodiscard]] const automaton& operator[](std::size_t i) const { return tas_.at(i); }
  [[nodiscard]] automaton& operator[](std::size_t i) { return tas_.at(i); }

  bool operator==(const clause_team&) const = default;

private:
  std::vector<automaton> tas_;
};

namespace detail {

inline void check_input(const clause_team& team, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != team.width())
    throw std::invalid_argument("clause: input width does not match team width");
  for (std::uint8_t bit : x)
    if (bit > 1) throw std::invalid_argument("clause: inputs must be bits");
}

[[nodiscard]] inline bool literal_value(std::span<const std::uint8_t> x, std::size_t pos) noexcept {
  const bool bit = x[pos / 2] != 0;
  return (pos % 2 == 0) ? bit : !bit;
}

}  // namespace detail

/// Conjunction of the included literals over input x; an empty clause
/// falls back to the phase convention.
[[nodiscard]] inline bool clause_eval(const clause_team& team,
                                      std::span<const std::uint8_t> x,
                                      clause_phase phase) {
  detail::check_input(team, x);
  bool any_included = false;
  bool value = true;
  const std::span<const automaton> tas = team.automata();
  for (std::size_t pos = 0; pos < tas.size(); ++pos) {
    if (tas[pos].action() != action_kind::include) continue;
    any_included = true;
    value = value && detail::literal_value(x, pos);
  }
  if (!any_included) return phase == clause_phase::training;
  return value;
}

/// Fresh team with every automaton in its shallowest Exclude state region:
/// states are drawn uniformly from [depth+1, 2*depth], so the initial
/// clause is empty and every literal is reachable.
[[nodiscard]] inline clause_team init_team(int width, int depth, rng_stream& rng) {
  if (width < 1) throw std::invalid_argument("init_team: width must be >= 1");
  if (depth < 1) throw std::invalid_argument("init_team: depth must be >= 1");
  std::vector<automaton> tas;
  tas.reserve(2 * static_cast<std::size_t>(width));
  for (int i = 0; i < 2 * width; ++i)
    tas.emplace_back(depth + 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(depth))), depth);
  return clause_team(std::move(tas));
}

/// One training update. The clause value is computed first, against the
/// pre-step team; each automaton's feedback then depends only on that
/// value, the label, its own literal and its own pre-step action, so the
/// in-place sweep below is exactly the simultaneous update. One uniform
/// variate is consumed per automaton, in team order.
inline void train_step_inplace(clause_team& team, std::span<const std::uint8_t> x,
                               bool y, double s, rng_stream& rng) {
  detail::check_input(team, x);
  if (!(s >= 1.0)) throw std::invalid_argument("train_step: granularity s must be >= 1");
  const bool cval = clause_eval(team, x, clause_phase::training);
  const std::size_t count = static_cast<std::size_t>(2 * team.width());
  for (std::size_t pos = 0; pos < count; ++pos) {
    const bool lit = detail::literal_value(x, pos);
    const feedback_probs p = y ? type_i_probs(team[pos].action(), lit, cval, s)
                               : type_ii_probs(team[pos].action(), lit, cval);
    team[pos] = apply_feedback(team[pos], draw_feedback(p, rng.uniform01()));
  }
}

/// Value-returning variant of train_step_inplace.
[[nodiscard]] inline clause_team train_step(clause_team team, const sample& sm,
                                            double s, rng_stream& rng) {
  train_step_inplace(team, sm.x, sm.y != 0, s, rng);
  return team;
}

/// Disjunction of clause outputs (the DNF read-out).
[[nodiscard]] inline bool dnf_infer(std::span<const std::uint8_t> clause_values) {
  if (clause_values.empty())
    throw std::invalid_argument("dnf_infer: need at least one clause value");
  for (std::uint8_t v : clause_values)
    if (v != 0) return true;
  return false;
}

/// Vote sum with alternating polarity: clauses at even positions (first,
/// third, ...) add, clauses at odd positions subtract.
[[nodiscard]] inline int voting_score(std::span<const std::uint8_t> clause_values) {
  if (clause_values.empty())
    throw std::invalid_argument("voting_score: need at least one clause value");
  int score = 0;
  for (std::size_t i = 0; i < clause_values.size(); ++i) {
    const int v = clause_values[i] != 0 ? 1 : 0;
    score += (i % 2 == 0) ? v : -v;
  }
  return score;
}

/// Threshold read-out of a vote sum; ties go to the positive class.
[[nodiscard]] constexpr bool voting_infer(int score) noexcept { return score >= 0; }

}  // namespace tmconv
