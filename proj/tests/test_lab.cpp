#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <tmconv/lab.hpp>

using namespace tmconv;

namespace {

trial_spec noise_free_spec() {
  trial_spec spec;
  spec.env = noise_free(0.5);
  spec.s = 4.0;
  spec.depth = 2;
  spec.steps = 10'000;
  spec.tail_window = 1'000;
  spec.base_seed = 7;
  return spec;
}

}  // namespace

TEST_CASE("trial specs are validated") {
  trial_spec spec = noise_free_spec();
  spec.s = 0.5;
  REQUIRE_THROWS_AS(run_trial(spec, 0), std::invalid_argument);
  spec = noise_free_spec();
  spec.depth = 0;
  REQUIRE_THROWS_AS(run_trial(spec, 0), std::invalid_argument);
  spec = noise_free_spec();
  spec.tail_window = 0;
  REQUIRE_THROWS_AS(run_trial(spec, 0), std::invalid_argument);
  spec = noise_free_spec();
  spec.steps = spec.tail_window - 1;
  REQUIRE_THROWS_AS(run_trial(spec, 0), std::invalid_argument);
}

TEST_CASE("noise-free trials are absorbed into include-exclude") {
  const trial_spec spec = noise_free_spec();
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const trial_outcome out = run_trial(spec, trial);
    REQUIRE(out.final_pair == action_pair::ie);
    REQUIRE(out.tail_dominant == action_pair::ie);
    REQUIRE(out.tail_fraction == 1.0);
    std::int64_t total = 0;
    for (std::int64_t count : out.occupancy) total += count;
    REQUIRE(total == spec.steps);
  }
}

TEST_CASE("trials are deterministic in base seed and trial index") {
  const trial_spec spec = noise_free_spec();
  const trial_outcome first = run_trial(spec, 3);
  const trial_outcome again = run_trial(spec, 3);
  REQUIRE(first.final_pair == again.final_pair);
  REQUIRE(first.tail_dominant == again.tail_dominant);
  REQUIRE(first.tail_fraction == again.tail_fraction);
  REQUIRE(first.occupancy == again.occupancy);
  const trial_outcome other = run_trial(spec, 4);
  REQUIRE(first.occupancy != other.occupancy);
}

TEST_CASE("experiments histogram tail-dominant pairs and judge them") {
  const trial_spec spec = noise_free_spec();
  const experiment_report report = run_experiment(spec, 200, 1);
  REQUIRE(report.trials == 200);
  REQUIRE(report.pair_counts == std::array<std::int64_t, 4>{0, 200, 0, 0});
  REQUIRE(report.prediction == region_prediction(false, true, false));
  REQUIRE(report.verdict == verdict_kind::consistent);
  REQUIRE(report.confidence == 1.0);
  REQUIRE(report.spec == spec);
}

TEST_CASE("experiments are invariant under the thread count") {
  trial_spec spec = noise_free_spec();
  spec.steps = 2'000;
  spec.tail_window = 200;
  const experiment_report serial = run_experiment(spec, 40, 1);
  const experiment_report threaded = run_experiment(spec, 40, 4);
  const experiment_report automatic = run_experiment(spec, 40, 0);
  REQUIRE(serial == threaded);
  REQUIRE(serial == automatic);
}

TEST_CASE("judgement covers consistent, inconsistent and indeterminate") {
  const region_prediction ie_only(false, true, false);
  const region_prediction ie_or_ei(false, true, true);
  const region_prediction nothing;

  REQUIRE(judge(ie_only, {0, 1000, 0, 0}, 1000) == verdict_kind::consistent);
  REQUIRE(judge(ie_only, {0, 960, 40, 0}, 1000) == verdict_kind::consistent);
  // Unique dominant pair, but too many strays for the 95% bar.
  REQUIRE(judge(ie_only, {0, 940, 60, 0}, 1000) == verdict_kind::indeterminate);
  // A co-dominant pair outside the prediction.
  REQUIRE(judge(ie_only, {500, 500, 0, 0}, 1000) == verdict_kind::inconsistent);
  REQUIRE(judge(ie_only, {1000, 0, 0, 0}, 1000) == verdict_kind::inconsistent);
  // (I,I) can never be predicted, so its dominance is always inconsistent.
  REQUIRE(judge(ie_or_ei, {0, 0, 0, 1000}, 1000) == verdict_kind::inconsistent);
  // Two co-dominant pairs inside the prediction: supported but not single.
  REQUIRE(judge(ie_or_ei, {0, 500, 500, 0}, 1000) == verdict_kind::indeterminate);
  // An empty prediction can neither be confirmed nor refuted.
  REQUIRE(judge(nothing, {0, 1000, 0, 0}, 1000) == verdict_kind::indeterminate);
  // Counts below the co-dominance ratio do not taint the verdict.
  REQUIRE(judge(ie_only, {49, 951, 0, 0}, 1000) == verdict_kind::consistent);
  REQUIRE_THROWS_AS(judge(ie_only, {0, 0, 0, 0}, 0), std::invalid_argument);
}

TEST_CASE("experiment validation") {
  const trial_spec spec = noise_free_spec();
  REQUIRE_THROWS_AS(run_experiment(spec, 0, 1), std::invalid_argument);
}

TEST_CASE("transition frequencies agree with the analytic profile") {
  const one_bit_env env(0.9, 0.6, 0.5);
  const frequency_check_result r1 = transition_frequency_check(
      action_kind::exclude, action_kind::exclude, env, 2.0, 100'000, 1001);
  REQUIRE(r1.all_pass);
  const transition_profile expected =
      scenario_profile(action_kind::exclude, action_kind::exclude, env, 2.0);
  REQUIRE(r1.ta1.left.expected == expected.ta1.left);
  REQUIRE(r1.ta1.right.expected == expected.ta1.right);
  REQUIRE(r1.ta2.stay.expected == expected.ta2.stay);

  const frequency_check_result r2 = transition_frequency_check(
      action_kind::include, action_kind::exclude, env, 2.0, 100'000, 1002);
  REQUIRE(r2.all_pass);
}

TEST_CASE("frequency checks respect structural zeros exactly") {
  // Noise-free (I,E): the plain automaton never moves right, the negated
  // automaton never moves left, so both cells must come out exactly zero.
  const frequency_check_result r = transition_frequency_check(
      action_kind::include, action_kind::exclude, noise_free(0.5), 4.0, 50'000, 1003);
  REQUIRE(r.all_pass);
  REQUIRE(r.ta1.right.expected == 0.0);
  REQUIRE(r.ta1.right.observed == 0.0);
  REQUIRE(r.ta2.left.expected == 0.0);
  REQUIRE(r.ta2.left.observed == 0.0);
}

TEST_CASE("frequency checks demand enough draws") {
  REQUIRE_THROWS_AS(transition_frequency_check(action_kind::exclude, action_kind::exclude,
                                               noise_free(0.5), 2.0, 9'999, 1),
                    std::invalid_argument);
}

TEST_CASE("sweeps vary exactly one knob") {
  trial_spec base = noise_free_spec();
  base.steps = 2'000;
  base.tail_window = 200;

  const std::vector<double> s_grid{2.0, 3.0, 4.0};
  const std::vector<experiment_report> by_s = sweep_s(base, 20, s_grid, 1);
  REQUIRE(by_s.size() == 3);
  for (std::size_t i = 0; i < by_s.size(); ++i) {
    REQUIRE(by_s[i].spec.s == s_grid[i]);
    REQUIRE(by_s[i].spec.env == base.env);
    REQUIRE(by_s[i].trials == 20);
  }

  const std::vector<double> c_grid{0.3, 0.5, 0.7};
  const std::vector<experiment_report> by_c = sweep_c(base, 20, c_grid, 1);
  REQUIRE(by_c.size() == 3);
  for (std::size_t i = 0; i < by_c.size(); ++i) {
    REQUIRE(by_c[i].spec.env.c() == c_grid[i]);
    REQUIRE(by_c[i].spec.env.a() == base.env.a());
    REQUIRE(by_c[i].spec.env.b() == base.env.b());
    REQUIRE(by_c[i].spec.s == base.s);
  }

  REQUIRE_THROWS_AS(sweep_s(base, 20, {}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(sweep_c(base, 20, {}, 1), std::invalid_argument);
}

TEST_CASE("noise-free sweeps converge for every granularity") {
  trial_spec base = noise_free_spec();
  base.steps = 5'000;
  base.tail_window = 500;
  const std::vector<double> s_grid{2.0, 4.0, 8.0};
  for (const experiment_report& report : sweep_s(base, 50, s_grid, 1)) {
    REQUIRE(report.verdict == verdict_kind::consistent);
    REQUIRE(report.pair_counts[index_of(action_pair::ie)] == 50);
  }
}
