#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace tmconv {

/// Birth-death chain over states 0..2N abstracting one automaton while
/// its surroundings are held fixed. Every state steps right (toward
/// deeper exclusion) with probability alpha; states in the include half
/// (1..N) step left with probability beta, states in the exclude half
/// (N+1..2N) with gamma; the remainder of each row is a self-loop.
/// States 0..N express Include, states N+1..2N express Exclude.
struct birth_death_chain {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int depth = 1;  // N; the chain has 2N+1 states

  [[nodiscard]] int state_count() const noexcept { return 2 * depth + 1; }
};

struct stationary_dist {
  std::vector<double> pi;  // indexed by state 0..2N
};

inline void validate(const birth_death_chain& chain) {
  if (chain.depth < 1)
    throw std::invalid_argument("birth_death_chain: depth must be >= 1");
  const auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in01(chain.alpha) || !in01(chain.beta) || !in01(chain.gamma))
    throw std::invalid_argument("birth_death_chain: rates must lie in [0, 1]");
  if (chain.alpha + std::max(chain.beta, chain.gamma) > 1.0 + 1e-12)
    throw std::invalid_argument("birth_death_chain: row probabilities exceed 1");
}

/// Stationary distribution from the closed-form detailed-balance solution
///   pi_k     = (alpha/beta)^k  * pi_0          for k = 0..N,
///   pi_{N+j} = (alpha/gamma)^j * pi_N          for j = 1..N.
/// Ratios are accumulated in log space, so deep chains with extreme
/// alpha/beta neither overflow nor underflow; alpha = 0 degenerates
/// cleanly to all mass at state 0. A zero leftward rate has no stationary
/// distribution in this form and raises degenerate_chain_error.
[[nodiscard]] inline stationary_dist stationary(const birth_death_chain& chain) {
  validate(chain);
  if (chain.beta <= 0.0 || chain.gamma <= 0.0)
    throw degenerate_chain_error("stationary: beta and gamma must be positive");
  const int n = chain.state_count();
  std::vector<double> logw(static_cast<std::size_t>(n));
  const double step_inc = std::log(chain.alpha) - std::log(chain.beta);
  const double step_exc = std::log(chain.alpha) - std::log(chain.gamma);
  logw[0] = 0.0;
  for (int k = 1; k < n; ++k)
    logw[static_cast<std::size_t>(k)] =
        logw[static_cast<std::size_t>(k - 1)] + (k <= chain.depth ? step_inc : step_exc);
  const double peak = *std::max_element(logw.begin(), logw.end());
  stationary_dist dist;
  dist.pi.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    dist.pi[static_cast<std::size_t>(k)] = std::exp(logw[static_cast<std::size_t>(k)] - peak);
    total += dist.pi[static_cast<std::size_t>(k)];
  }
  for (double& p : dist.pi) p /= total;
  return dist;
}

/// Total stationary mass on the include half (states 0..N).
[[nodiscard]] inline double include_mass(const stationary_dist& dist, int depth) {
  if (depth < 1) throw std::invalid_argument("include_mass: depth must be >= 1");
  if (dist.pi.size() != static_cast<std::size_t>(2 * depth + 1))
    throw std::invalid_argument("include_mass: distribution size does not match depth");
  double mass = 0.0;
  for (int k = 0; k <= depth; ++k) mass += dist.pi[static_cast<std::size_t>(k)];
  return mass;
}

/// Where a chain of this family settles as its depth grows without bound.
enum class chain_limit : std::uint8_t { include, exclude, indeterminate };

/// Deep-chain limit of the expressed action: all mass drifts onto
/// Include when alpha < min(beta, gamma), onto Exclude when
/// alpha > max(beta, gamma); between those bounds the rates alone do not
/// determine the limit.
[[nodiscard]] inline chain_limit asymptotic_action(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("asymptotic_action: rates must be non-negative");
  if (alpha < std::min(beta, gamma)) return chain_limit::include;
  if (alpha > std::max(beta, gamma)) return chain_limit::exclude;
  return chain_limit::indeterminate;
}

[[nodiscard]] constexpr const char* to_string(chain_limit lim) noexcept {
  switch (lim) {
    case chain_limit::include: return "include";
    case chain_limit::exclude: return "exclude";
    case chain_limit::indeterminate: return "indeterminate";
  }
  return "?";
}

}  // namespace tmconv
