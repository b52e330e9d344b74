#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chains.hpp"
#include "clause.hpp"
#include "env.hpp"
#include "rng.hpp"
#include "thresholds.hpp"

namespace tmconv {

/// Everything one Monte Carlo trial needs. base_seed plus the trial index
/// fully determine a trial's sample and feedback streams, so runs are
/// reproducible and independent of thread scheduling.
struct trial_spec {
  one_bit_env env{0.5, 0.5, 0.5};
  double s = 2.0;
  int depth = 50;
  std::int64_t steps = 200'000;
  std::int64_t tail_window = 20'000;
  std::uint64_t base_seed = 1;

  bool operator==(const trial_spec&) const = default;
};

inline void validate(const trial_spec& spec) {
  if (!(spec.s >= 1.0)) throw std::invalid_argument("trial_spec: s must be >= 1");
  if (spec.depth < 1) throw std::invalid_argument("trial_spec: depth must be >= 1");
  if (spec.tail_window < 1) throw std::invalid_argument("trial_spec: tail_window must be >= 1");
  if (spec.steps < spec.tail_window)
    throw std::invalid_argument("trial_spec: steps must be >= tail_window");
}

struct trial_outcome {
  action_pair final_pair = action_pair::ee;
  action_pair tail_dominant = action_pair::ee;  // ties break to the lowest index
  double tail_fraction = 0.0;                   // tail share of the dominant pair
  std::array<std::int64_t, action_pair_count> occupancy{};  // whole-run step counts
};

/// One trained trajectory of the one-bit game: fresh team, `steps`
/// training updates, per-pair occupancy bookkeeping over the whole run
/// and over the final tail_window steps.
[[nodiscard]] inline trial_outcome run_trial(const trial_spec& spec, std::uint64_t trial_index) {
  validate(spec);
  rng_stream rng(derive_stream_seed(spec.base_seed, trial_index));
  clause_team team = init_team(1, spec.depth, rng);
  std::array<std::int64_t, action_pair_count> occupancy{};
  std::array<std::int64_t, action_pair_count> tail{};
  const std::int64_t tail_start = spec.steps - spec.tail_window;
  std::uint8_t x[1] = {0};
  action_pair pair = make_action_pair(team[0].action(), team[1].action());
  for (std::int64_t step = 0; step < spec.steps; ++step) {
    const bit_sample bs = draw_bit_sample(spec.env, rng);
    x[0] = bs.x;
    train_step_inplace(team, x, bs.y != 0, spec.s, rng);
    pair = make_action_pair(team[0].action(), team[1].action());
    ++occupancy[index_of(pair)];
    if (step >= tail_start) ++tail[index_of(pair)];
  }
  trial_outcome out;
  out.final_pair = pair;
  out.occupancy = occupancy;
  std::size_t best = 0;
  for (std::size_t i = 1; i < tail.size(); ++i)
    if (tail[i] > tail[best]) best = i;
  out.tail_dominant = static_cast<action_pair>(best);
  out.tail_fraction = static_cast<double>(tail[best]) / static_cast<double>(spec.tail_window);
  return out;
}

enum class verdict_kind : std::uint8_t { consistent, inconsistent, indeterminate };

/// A run is Consistent only when at least this share of trials lands on
/// the single dominant pair.
inline constexpr double consistency_threshold = 0.95;
/// A pair co-dominates when its trial count reaches this share of the
/// largest count.
inline constexpr double dominance_ratio = 0.95;

/// Compares trial outcomes against a region prediction.
///   - empty prediction: Indeterminate (nothing to confirm or refute);
///   - any (co-)dominant pair outside the prediction: Inconsistent;
///   - a unique dominant pair inside the prediction reached by >= 95% of
///     trials: Consistent;
///   - otherwise Indeterminate.
[[nodiscard]] inline verdict_kind judge(const region_prediction& prediction,
                                        const std::array<std::int64_t, action_pair_count>& counts,
                                        std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("judge: trials must be >= 1");
  if (prediction.empty()) return verdict_kind::indeterminate;
  const std::int64_t top = *std::max_element(counts.begin(), counts.end());
  int dominant_size = 0;
  std::size_t dominant_index = 0;
  bool outside = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0 ||
        static_cast<double>(counts[i]) < dominance_ratio * static_cast<double>(top))
      continue;
    ++dominant_size;
    dominant_index = i;
    if (!prediction.contains(static_cast<action_pair>(i))) outside = true;
  }
  if (outside) return verdict_kind::inconsistent;
  if (dominant_size == 1 &&
      static_cast<double>(counts[dominant_index]) >=
          consistency_threshold * static_cast<double>(trials))
    return verdict_kind::consistent;
  return verdict_kind::indeterminate;
}

struct experiment_report {
  trial_spec spec;
  std::int64_t trials = 0;
  std::array<std::int64_t, action_pair_count> pair_counts{};  // by tail-dominant pair
  region_prediction prediction;
  verdict_kind verdict = verdict_kind::indeterminate;
  double confidence = 0.0;  // trial share of the most frequent pair

  bool operator==(const experiment_report&) const = default;
};

/// Runs `trials` independent trials (parallelised over `threads`; 0 means
/// one per hardware thread), classifies each by its tail-dominant pair
/// and judges the histogram against predict_regions. Results are
/// identical for every thread count because each trial owns a seed
/// derived from its index alone.
[[nodiscard]] inline experiment_report run_experiment(const trial_spec& spec,
                                                      std::int64_t trials,
                                                      unsigned threads = 0) {
  validate(spec);
  if (trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::int64_t>(static_cast<std::int64_t>(threads), trials));

  std::vector<std::array<std::int64_t, action_pair_count>> partial(
      threads, std::array<std::int64_t, action_pair_count>{});
  const auto work = [&](unsigned worker) {
    for (std::int64_t t = static_cast<std::int64_t>(worker); t < trials;
         t += static_cast<std::int64_t>(threads)) {
      const trial_outcome out = run_trial(spec, static_cast<std::uint64_t>(t));
      ++partial[worker][index_of(out.tail_dominant)];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
  }

  experiment_report report;
  report.spec = spec;
  report.trials = trials;
  for (const auto& block : partial)
    for (std::size_t i = 0; i < block.size(); ++i) report.pair_counts[i] += block[i];
  report.prediction = predict_regions(spec.env, spec.s);
  report.verdict = judge(report.prediction, report.pair_counts, trials);
  const std::int64_t top =
      *std::max_element(report.pair_counts.begin(), report.pair_counts.end());
  report.confidence = static_cast<double>(top) / static_cast<double>(trials);
  return report;
}

struct frequency_cell {
  double expected = 0.0;
  double observed = 0.0;
  bool pass = false;
};

/// Measured left/right/stay frequencies of one automaton.
struct frequency_row {
  frequency_cell left, right, stay;
};

struct frequency_check_result {
  frequency_row ta1, ta2;
  bool all_pass = false;
};

/// Empirically validates scenario_profile: holds the joint action
/// configuration fixed by resetting both automata to interior states
/// before every draw, performs `draws` single training updates and
/// compares each automaton's move frequencies cell-by-cell against the
/// analytic profile within three binomial standard deviations
/// (cells with expected probability exactly 0 or 1 must match exactly).
[[nodiscard]] inline frequency_check_result transition_frequency_check(
    action_kind ta1_action, action_kind ta2_action, const one_bit_env& env, double s,
    std::int64_t draws, std::uint64_t seed) {
  if (draws < 10'000)
    throw std::invalid_argument("transition_frequency_check: draws must be >= 10000");
  // Interior states of a depth-3 automaton: one step in either direction
  // neither saturates nor crosses the centre, so single-step moves are
  // observed undistorted.
  constexpr int depth = 3;
  const automaton home1(ta1_action == action_kind::include ? 2 : 2 * depth - 1, depth);
  const automaton home2(ta2_action == action_kind::include ? 2 : 2 * depth - 1, depth);
  clause_team team({home1, home2});
  rng_stream rng(seed);
  std::array<std::int64_t, 3> moves1{};  // left, right, stay
  std::array<std::int64_t, 3> moves2{};
  std::uint8_t x[1] = {0};
  const auto tally = [](std::array<std::int64_t, 3>& moves, int delta) {
    if (delta < 0) ++moves[0];
    else if (delta > 0) ++moves[1];
    else ++moves[2];
  };
  for (std::int64_t d = 0; d < draws; ++d) {
    team[0] = home1;
    team[1] = home2;
    const bit_sample bs = draw_bit_sample(env, rng);
    x[0] = bs.x;
    train_step_inplace(team, x, bs.y != 0, s, rng);
    tally(moves1, team[0].state() - home1.state());
    tally(moves2, team[1].state() - home2.state());
  }
  const transition_profile profile = scenario_profile(ta1_action, ta2_action, env, s);
  const auto cell = [draws](double expected, std::int64_t count) {
    frequency_cell out;
    out.expected = expected;
    out.observed = static_cast<double>(count) / static_cast<double>(draws);
    const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(draws));
    out.pass = sigma > 0.0 ? std::abs(out.observed - expected) <= 3.0 * sigma
                           : out.observed == expected;
    return out;
  };
  const auto row = [&](const move_probs& p, const std::array<std::int64_t, 3>& moves) {
    return frequency_row{cell(p.left, moves[0]), cell(p.right, moves[1]),
                         cell(p.stay, moves[2])};
  };
  frequency_check_result result{row(profile.ta1, moves1), row(profile.ta2, moves2), false};
  const auto row_ok = [](const frequency_row& r) {
    return r.left.pass && r.right.pass && r.stay.pass;
  };
  result.all_pass = row_ok(result.ta1) && row_ok(result.ta2);
  return result;
}

/// One experiment per granularity value, everything else held fixed.
[[nodiscard]] inline std::vector<experiment_report> sweep_s(const trial_spec& base,
                                                            std::int64_t trials,
                                                            std::span<const double> s_values,
                                                            unsigned threads = 0) {
  if (s_values.empty()) throw std::invalid_argument("sweep_s: empty grid");
  std::vector<experiment_report> reports;
  reports.reserve(s_values.size());
  for (double s : s_values) {
    trial_spec spec = base;
    spec.s = s;
    reports.push_back(run_experiment(spec, trials, threads));
  }
  return reports;
}

/// One experiment per input bias value, everything else held fixed.
[[nodiscard]] inline std::vector<experiment_report> sweep_c(const trial_spec& base,
                                                            std::int64_t trials,
                                                            std::span<const double> c_values,
                                                            unsigned threads = 0) {
  if (c_values.empty()) throw std::invalid_argument("sweep_c: empty grid");
  std::vector<experiment_report> reports;
  reports.reserve(c_values.size());
  for (double c : c_values) {
    trial_spec spec = base;
    spec.env = one_bit_env(base.env.a(), base.env.b(), c);
    reports.push_back(run_experiment(spec, trials, threads));
  }
  return reports;
}

}  // namespace tmconv
