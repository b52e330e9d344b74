#pragma once

#include <stdexcept>

namespace tmconv {

/// Raised when a structurally impossible feedback-table cell is queried
/// (an included 0-literal inside a clause that evaluates to 1). This is a
/// simulator logic bug, never a data condition.
class contract_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Raised by the stationary solver when a leftward rate is zero and the
/// closed-form solution collapses onto a chain end. Asymptotic behaviour
/// of such chains is still available through asymptotic_action().
class degenerate_chain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when a threshold ratio is 0/0 and therefore carries no
/// information about the environment.
class undefined_threshold_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

}  // namespace tmconv
