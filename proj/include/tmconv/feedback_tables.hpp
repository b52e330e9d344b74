#pragma once

#include <stdexcept>

#include "automaton.hpp"
#include "errors.hpp"

namespace tmconv {

/// Probability of each feedback signal for one automaton at one step.
struct feedback_probs {
  double reward = 0.0;
  double inaction = 0.0;
  double penalty = 0.0;
};

/// Type I feedback (label y = 1). Reinforces clauses toward matching
/// 1-labelled inputs: included 1-literals of a true clause are rewarded
/// with probability (s-1)/s, literals of a false clause drift toward
/// exclusion with probability 1/s, and excluded literals that would keep
/// a true clause true are pulled in. The granularity s >= 1 trades off
/// how fine a pattern the clause converges to.
///
/// The cell (include, literal=0, clause=1) is structurally impossible --
/// a clause holding an included 0-literal cannot evaluate to 1 -- and
/// querying it throws contract_error to flag a simulator bug.
[[nodiscard]] inline feedback_probs type_i_probs(action_kind action, bool literal,
                                                 bool clause, double s) {
  if (!(s >= 1.0))
    throw std::invalid_argument("type_i_probs: granularity s must be >= 1");
  const double lo = 1.0 / s;
  const double hi = (s - 1.0) / s;
  if (action == action_kind::include) {
    if (clause && !literal)
      throw contract_error("type_i_probs: included 0-literal in a true clause");
    if (clause) return {hi, lo, 0.0};
    return {0.0, hi, lo};
  }
  if (clause && literal) return {0.0, lo, hi};
  return {lo, hi, 0.0};
}

/// Type II feedback (label y = 0). Its only active cell penalises an
/// excluded 0-literal of a clause that falsely evaluates to 1, pushing
/// the clause to include a literal that refutes the input; every other
/// combination is inaction. The impossible cell throws contract_error as
/// in type_i_probs.
[[nodiscard]] inline feedback_probs type_ii_probs(action_kind action, bool literal,
                                                  bool clause) {
  if (action == action_kind::include) {
    if (clause && !literal)
      throw contract_error("type_ii_probs: included 0-literal in a true clause");
    return {0.0, 1.0, 0.0};
  }
  if (clause && !literal) return {0.0, 0.0, 1.0};
  return {0.0, 1.0, 0.0};
}

/// Maps one uniform variate to a signal: [0, r) -> reward,
/// [r, r+i) -> inaction, remainder -> penalty. Cells with an exact zero
/// probability are guarded explicitly so they can never be drawn through
/// floating-point round-off at the interval boundaries.
[[nodiscard]] inline feedback_signal draw_feedback(const feedback_probs& p,
                                                   double u) noexcept {
  if (u < p.reward) return feedback_signal::reward;
  if (p.penalty > 0.0 && u >= p.reward + p.inaction) return feedback_signal::penalty;
  return feedback_signal::inaction;
}

}  // namespace tmconv
