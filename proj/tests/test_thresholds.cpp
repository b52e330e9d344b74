#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <tmconv/rng.hpp>
#include <tmconv/thresholds.hpp>

using namespace tmconv;

TEST_CASE("thresholds match hand-computed values") {
  const threshold_set t = thresholds(one_bit_env(0.9, 0.6, 0.5));
  REQUIRE(t.s1 == Catch::Approx(15.0 / 13.0).margin(1e-12));
  REQUIRE(t.s2 == Catch::Approx(5.0 / 3.0).margin(1e-12));
  REQUIRE(t.s3 == Catch::Approx(3.75).margin(1e-12));
  REQUIRE(t.s4 == Catch::Approx(15.0 / 7.0).margin(1e-12));
  REQUIRE(t.s5 == Catch::Approx(2.5).margin(1e-12));
  REQUIRE(t.s6 == Catch::Approx(15.0).margin(1e-12));
}

TEST_CASE("the unbiased half environment gives exact threshold values") {
  // Every intermediate value is a power of two, so equality is exact.
  const threshold_set t = thresholds(one_bit_env(0.5, 0.5, 0.5));
  REQUIRE(t.s1 == 1.0);
  REQUIRE(t.s2 == 2.0);
  REQUIRE(t.s3 == 2.0);
  REQUIRE(t.s4 == 1.0);
  REQUIRE(t.s5 == 2.0);
  REQUIRE(t.s6 == 2.0);
}

TEST_CASE("noise-free thresholds degenerate to an unbounded learnable band") {
  const threshold_set t = thresholds(noise_free(0.5));
  REQUIRE(t.s1 == 0.5);
  REQUIRE(t.s2 == 1.0);
  REQUIRE(t.s3 == 1.0);
  REQUIRE(std::isinf(t.s4));
  REQUIRE(std::isinf(t.s5));
  REQUIRE(std::isinf(t.s6));
  // The only surviving region is (I,E) on (s2, s6) = (1, infinity).
  for (double s : {1.5, 2.0, 4.0, 100.0, 1e6}) {
    const region_prediction pred = predict_regions(noise_free(0.5), s);
    REQUIRE(pred.ie());
    REQUIRE_FALSE(pred.ee());
    REQUIRE_FALSE(pred.ei());
  }
}

TEST_CASE("0/0 threshold ratios are undefined") {
  // a = 0, b = 1, c = 1 makes P(y=1) = 0 with a zero denominator.
  REQUIRE_THROWS_AS(thresholds(one_bit_env(0.0, 1.0, 1.0)), undefined_threshold_error);
  // predict_regions treats the same degeneracy as empty regions instead.
  const region_prediction pred = predict_regions(one_bit_env(0.0, 1.0, 1.0), 2.0);
  REQUIRE(pred.empty());
}

TEST_CASE("c thresholds match hand-computed values") {
  const c_threshold_set ct = c_thresholds(0.9, 0.6);
  REQUIRE(ct.c1 == Catch::Approx(4.0 / 13.0).margin(1e-12));
  REQUIRE(ct.c2 == Catch::Approx(0.4).margin(1e-12));
  REQUIRE(ct.c3 == Catch::Approx(0.8).margin(1e-12));
  REQUIRE(ct.c4 == Catch::Approx(6.0 / 7.0).margin(1e-12));

  const c_threshold_set mid = c_thresholds(0.5, 0.5);
  REQUIRE(mid.c1 == 0.5);
  REQUIRE(mid.c2 == 0.5);
  REQUIRE(mid.c3 == 0.5);
  REQUIRE(mid.c4 == 0.5);
}

TEST_CASE("c thresholds require a noisy label channel") {
  REQUIRE_THROWS_AS(c_thresholds(0.0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(c_thresholds(1.0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(c_thresholds(0.5, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(c_thresholds(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("region prediction reproduces the worked cases") {
  const one_bit_env biased(0.9, 0.1, 0.5);
  REQUIRE(predict_regions(biased, 3.0) == region_prediction(false, true, false));

  const one_bit_env mixed(0.9, 0.6, 0.5);
  REQUIRE(predict_regions(mixed, 3.0) == region_prediction(false, true, true));
  REQUIRE(predict_regions(mixed, 2.0) == region_prediction(false, true, false));
  REQUIRE(predict_regions(mixed, 1.1) == region_prediction(true, false, false));

  const one_bit_env inverted(0.1, 0.9, 0.5);
  REQUIRE(predict_regions(inverted, 3.0) == region_prediction(false, false, true));
}

TEST_CASE("the fully unbiased environment never converges") {
  const one_bit_env flat(0.5, 0.5, 0.5);
  for (double s : {1.0, 1.5, 2.0, 2.5, 3.0, 10.0})
    REQUIRE(predict_regions(flat, s).empty());
}

TEST_CASE("interval boundaries are excluded on both sides") {
  const one_bit_env mixed(0.9, 0.6, 0.5);  // s5 = 2.5, s3 = 3.75
  REQUIRE_FALSE(predict_regions(mixed, 2.5).ei());
  REQUIRE(predict_regions(mixed, 2.5 + 1e-9).ei());
  REQUIRE_FALSE(predict_regions(mixed, 3.75).ei());
  REQUIRE(predict_regions(mixed, 3.75 - 1e-9).ei());
  // s = 1 is never inside the (E,E) band.
  REQUIRE_FALSE(predict_regions(mixed, 1.0).ee());
}

TEST_CASE("prediction requires s >= 1") {
  REQUIRE_THROWS_AS(predict_regions(one_bit_env(0.9, 0.6, 0.5), 0.99),
                    std::invalid_argument);
}

TEST_CASE("shared-numerator thresholds are ordered by their denominators") {
  rng_stream rng(4242);
  for (int round = 0; round < 1000; ++round) {
    const double a = 0.05 + 0.9 * rng.uniform01();
    const double b = 0.05 + 0.9 * rng.uniform01();
    const double c = 0.05 + 0.9 * rng.uniform01();
    const threshold_set t = thresholds(one_bit_env(a, b, c));
    REQUIRE(t.s1 <= t.s2);
    REQUIRE(t.s1 <= t.s3);
    REQUIRE(t.s4 <= t.s5);
    REQUIRE(t.s4 <= t.s6);
    REQUIRE(t.s1 > 0.0);
    REQUIRE(t.s4 > 0.0);
  }
}

TEST_CASE("predictions agree with raw threshold intervals on random environments") {
  rng_stream rng(9191);
  for (int round = 0; round < 500; ++round) {
    const double a = 0.05 + 0.9 * rng.uniform01();
    const double b = 0.05 + 0.9 * rng.uniform01();
    const double c = 0.05 + 0.9 * rng.uniform01();
    const double s = 1.0 + 9.0 * rng.uniform01();
    const one_bit_env env(a, b, c);
    const threshold_set t = thresholds(env);
    const region_prediction pred = predict_regions(env, s);
    const auto inside = [s](double lo, double hi) {
      return s - lo > region_boundary_tol && hi - s > region_boundary_tol;
    };
    REQUIRE(pred.ee() == inside(1.0, std::min(t.s1, t.s4)));
    REQUIRE(pred.ie() == inside(t.s2, t.s6));
    REQUIRE(pred.ei() == inside(t.s5, t.s3));
  }
}

TEST_CASE("region_prediction behaves as a small set") {
  const region_prediction none;
  REQUIRE(none.empty());
  REQUIRE(none.size() == 0);
  const region_prediction both(false, true, true);
  REQUIRE(both.size() == 2);
  REQUIRE(both.contains(action_pair::ie));
  REQUIRE(both.contains(action_pair::ei));
  REQUIRE_FALSE(both.contains(action_pair::ee));
  REQUIRE_FALSE(both.contains(action_pair::ii));
  REQUIRE(region_prediction(true, false, false) == region_prediction(true, false, false));
  REQUIRE(region_prediction(true, false, false) != both);
}
