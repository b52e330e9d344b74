#pragma once

#include <cstdint>
#include <stdexcept>

namespace tmconv {

/// The two actions a learning automaton can express.
enum class action_kind : std::uint8_t { include = 0, exclude = 1 };

/// Environment response driving one state transition.
enum class feedback_signal : std::uint8_t { reward = 0, inaction = 1, penalty = 2 };

/// Finite two-action automaton with 2N memory states. States 1..N express
/// Include, states N+1..2N express Exclude. Rewards move the state away
/// from the centre (deepening confidence in the current action) and
/// saturate at the ends; penalties move it toward the centre and
/// eventually across it, flipping the action.
class automaton {
public:
  automaton(int state, int depth) : state_(state), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("automaton: depth must be >= 1");
    if (state < 1 || state > 2 * depth)
      throw std::invalid_argument("automaton: state must lie in [1, 2*depth]");
  }

  [[nodiscard]] int state() const noexcept { return state_; }
  [[nodiscard]] int depth() const noexcept { return depth_; }

  [[nodiscard]] action_kind action() const noexcept {
    return state_ <= depth_ ? action_kind::include : action_kind::exclude;
  }

  bool operator==(const automaton&) const = default;

private:
  friend automaton apply_feedback(automaton a, feedback_signal f) noexcept;

  int state_;
  int depth_;
};

/// Pure transition function. Inaction is the identity; a penalty flips the
/// action exactly when the state is adjacent to the centre (N or N+1).
[[nodiscard]] inline automaton apply_feedback(automaton a, feedback_signal f) noexcept {
  switch (f) {
    case feedback_signal::reward:
      if (a.action() == action_kind::include) {
        if (a.state_ > 1) --a.state_;
      } else {
        if (a.state_ < 2 * a.depth_) ++a.state_;
      }
      break;
    case feedback_signal::penalty:
      if (a.action() == action_kind::include) {
        ++a.state_;
      } else {
        --a.state_;
      }
      break;
    case feedback_signal::inaction:
      break;
  }
  return a;
}

/// Joint action of the two automata of the one-bit game; the first
/// component belongs to the automaton guarding the plain literal x, the
/// second to the automaton guarding its negation.
enum class action_pair : std::uint8_t { ee = 0, ie = 1, ei = 2, ii = 3 };

inline constexpr int action_pair_count = 4;

[[nodiscard]] constexpr action_pair make_action_pair(action_kind first,
                                                     action_kind second) noexcept {
  const int idx = (first == action_kind::include ? 1 : 0) +
                  (second == action_kind::include ? 2 : 0);
  return static_cast<action_pair>(idx);
}

[[nodiscard]] constexpr std::size_t index_of(action_pair p) noexcept {
  return static_cast<std::size_t>(p);
}

/// Two-letter code, first automaton first: "EE", "IE", "EI", "II".
[[nodiscard]] constexpr const char* to_code(action_pair p) noexcept {
  switch (p) {
    case action_pair::ee: return "EE";
    case action_pair::ie: return "IE";
    case action_pair::ei: return "EI";
    case action_pair::ii: return "II";
  }
  return "??";
}

}  // namespace tmconv
