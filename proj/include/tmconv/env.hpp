#pragma once

#include <stdexcept>

#include "clause.hpp"
#include "rng.hpp"

namespace tmconv {

/// Sampling distribution of the one-bit environment:
///   P(x = 1) = c,  P(y = 1 | x = 1) = a,  P(y = 1 | x = 0) = b.
/// Samples are i.i.d.; a = 1, b = 0 is the noise-free identity function
/// y = x, while a = 0, b = 1 would be its negation.
class one_bit_env {
public:
  one_bit_env(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0 && c >= 0.0 && c <= 1.0))
      throw std::invalid_argument("one_bit_env: a, b, c must lie in [0, 1]");
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double c() const noexcept { return c_; }

  bool operator==(const one_bit_env&) const = default;

private:
  double a_;
  double b_;
  double c_;
};

/// The noise-free environment y = x with input bias c.
[[nodiscard]] inline one_bit_env noise_free(double c) { return {1.0, 0.0, c}; }

struct bit_sample {
  std::uint8_t x = 0;
  std::uint8_t y = 0;
};

/// Draws x and then y | x, consuming exactly two variates per call so the
/// stream position after n samples is independent of their values.
[[nodiscard]] inline bit_sample draw_bit_sample(const one_bit_env& env, rng_stream& rng) {
  const bool x = rng.uniform01() < env.c();
  const bool y = rng.uniform01() < (x ? env.a() : env.b());
  return {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)};
}

/// Same draw packaged as a width-1 training sample.
[[nodiscard]] inline sample draw_sample(const one_bit_env& env, rng_stream& rng) {
  const bit_sample bs = draw_bit_sample(env, rng);
  return sample{{bs.x}, bs.y};
}

}  // namespace tmconv
