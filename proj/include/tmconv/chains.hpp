#pragma once

#include <stdexcept>

#include "automaton.hpp"
#include "env.hpp"
#include "markov.hpp"

namespace tmconv {

namespace detail {

inline void check_chain_args(double s, int depth) {
  if (!(s >= 1.0)) throw std::invalid_argument("conditional chain: s must be >= 1");
  if (depth < 1) throw std::invalid_argument("conditional chain: depth must be >= 1");
}

}  // namespace detail

/// Conditional chain of the automaton guarding the plain literal x while
/// the peer automaton (guarding the negated literal) holds the given
/// action. Rates follow from averaging the feedback tables over the four
/// sample types of the environment:
///   peer Exclude:  alpha = b(1-c)/s
///                  beta  = (s-1)ac/s
///                  gamma = (s-1)ac/s + (1-b)(1-c)
///   peer Include:  alpha = ac/s + b(1-c)/s, beta = 0,
///                  gamma = (1-b)(1-c)
/// With the peer included the clause only fires on x = 0 inputs, so
/// nothing ever rewards keeping x included -- hence beta = 0.
[[nodiscard]] inline birth_death_chain ta1_chain(const one_bit_env& env, double s,
                                                 action_kind peer, int depth = 1) {
  detail::check_chain_args(s, depth);
  const double a = env.a(), b = env.b(), c = env.c();
  if (peer == action_kind::exclude) {
    const double beta = (s - 1.0) * a * c / s;
    return {b * (1.0 - c) / s, beta, beta + (1.0 - b) * (1.0 - c), depth};
  }
  return {a * c / s + b * (1.0 - c) / s, 0.0, (1.0 - b) * (1.0 - c), depth};
}

/// Conditional chain of the automaton guarding the negated literal while
/// the peer automaton (guarding the plain literal) holds the given
/// action. By the x <-> not-x symmetry this is ta1_chain with the roles
/// of (a, c) and (b, 1-c) swapped:
///   peer Exclude:  alpha = ac/s
///                  beta  = (s-1)b(1-c)/s
///                  gamma = (s-1)b(1-c)/s + (1-a)c
///   peer Include:  alpha = ac/s + b(1-c)/s, beta = 0,
///                  gamma = (1-a)c
[[nodiscard]] inline birth_death_chain ta2_chain(const one_bit_env& env, double s,
                                                 action_kind peer, int depth = 1) {
  detail::check_chain_args(s, depth);
  const double a = env.a(), b = env.b(), c = env.c();
  if (peer == action_kind::exclude) {
    const double beta = (s - 1.0) * b * (1.0 - c) / s;
    return {a * c / s, beta, beta + (1.0 - a) * c, depth};
  }
  return {a * c / s + b * (1.0 - c) / s, 0.0, (1.0 - a) * c, depth};
}

/// Per-step move distribution of one automaton (left = toward deeper
/// inclusion, right = toward deeper exclusion).
struct move_probs {
  double left = 0.0;
  double right = 0.0;
  double stay = 0.0;
};

struct transition_profile {
  move_probs ta1;
  move_probs ta2;
};

/// Move distribution of both automata while the joint action
/// configuration is held fixed, aggregated over the sample distribution.
/// This is the bridge between the simulated game and the conditional
/// chains: each automaton's left rate is the chain's beta or gamma
/// according to the half it currently occupies, its right rate is alpha,
/// and the rest is a self-loop.
[[nodiscard]] inline transition_profile scenario_profile(action_kind ta1_action,
                                                         action_kind ta2_action,
                                                         const one_bit_env& env, double s) {
  const birth_death_chain c1 = ta1_chain(env, s, ta2_action);
  const birth_death_chain c2 = ta2_chain(env, s, ta1_action);
  const auto half = [](const birth_death_chain& ch, action_kind own) {
    const double left = own == action_kind::include ? ch.beta : ch.gamma;
    return move_probs{left, ch.alpha, 1.0 - left - ch.alpha};
  };
  return {half(c1, ta1_action), half(c2, ta2_action)};
}

}  // namespace tmconv
