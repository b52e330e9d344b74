#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "lab.hpp"
#include "markov.hpp"
#include "thresholds.hpp"

namespace tmconv {

/// Shortest decimal form that parses back to the same double; "inf" and
/// "nan" for the non-finite values. Locale-independent, so serialized
/// output is byte-stable across machines.
[[nodiscard]] inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

[[nodiscard]] inline std::string to_string(verdict_kind v) {
  switch (v) {
    case verdict_kind::consistent: return "consistent";
    case verdict_kind::inconsistent: return "inconsistent";
    case verdict_kind::indeterminate: return "indeterminate";
  }
  return "?";
}

[[nodiscard]] inline verdict_kind verdict_from_string(const std::string& s) {
  if (s == "consistent") return verdict_kind::consistent;
  if (s == "inconsistent") return verdict_kind::inconsistent;
  if (s == "indeterminate") return verdict_kind::indeterminate;
  throw std::invalid_argument("verdict_from_string: unknown verdict '" + s + "'");
}

[[nodiscard]] inline action_pair pair_from_code(const std::string& code) {
  for (int i = 0; i < action_pair_count; ++i) {
    const auto p = static_cast<action_pair>(i);
    if (code == to_code(p)) return p;
  }
  throw std::invalid_argument("pair_from_code: unknown pair code '" + code + "'");
}

/// Pair codes of a prediction in index order, e.g. {"IE", "EI"}.
[[nodiscard]] inline std::vector<std::string> to_codes(const region_prediction& pred) {
  std::vector<std::string> codes;
  for (int i = 0; i < action_pair_count; ++i) {
    const auto p = static_cast<action_pair>(i);
    if (pred.contains(p)) codes.emplace_back(to_code(p));
  }
  return codes;
}

/// Single-token label, e.g. "IE", "EE+IE", or "none" for the empty set.
[[nodiscard]] inline std::string prediction_label(const region_prediction& pred) {
  const std::vector<std::string> codes = to_codes(pred);
  if (codes.empty()) return "none";
  std::string label = codes.front();
  for (std::size_t i = 1; i < codes.size(); ++i) label += "+" + codes[i];
  return label;
}

[[nodiscard]] inline region_prediction prediction_from_codes(const std::vector<std::string>& codes) {
  bool ee = false, ie = false, ei = false;
  for (const std::string& code : codes) {
    const action_pair p = pair_from_code(code);
    if (p == action_pair::ee) ee = true;
    else if (p == action_pair::ie) ie = true;
    else if (p == action_pair::ei) ei = true;
    else throw std::invalid_argument("prediction_from_codes: II cannot be predicted");
  }
  return {ee, ie, ei};
}

/// Number when finite, the string "inf"/"-inf" otherwise (JSON itself has
/// no infinity literal).
[[nodiscard]] inline nlohmann::json json_extended(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

[[nodiscard]] inline nlohmann::json to_json(const threshold_set& t) {
  return {{"s1", json_extended(t.s1)}, {"s2", json_extended(t.s2)},
          {"s3", json_extended(t.s3)}, {"s4", json_extended(t.s4)},
          {"s5", json_extended(t.s5)}, {"s6", json_extended(t.s6)}};
}

[[nodiscard]] inline nlohmann::json to_json(const c_threshold_set& t) {
  return {{"c1", json_extended(t.c1)},
          {"c2", json_extended(t.c2)},
          {"c3", json_extended(t.c3)},
          {"c4", json_extended(t.c4)}};
}

[[nodiscard]] inline nlohmann::json to_json(const birth_death_chain& chain) {
  return {{"alpha", chain.alpha}, {"beta", chain.beta}, {"gamma", chain.gamma},
          {"depth", chain.depth}};
}

[[nodiscard]] inline nlohmann::json to_json(const experiment_report& report) {
  const trial_spec& spec = report.spec;
  nlohmann::json counts;
  for (int i = 0; i < action_pair_count; ++i)
    counts[to_code(static_cast<action_pair>(i))] =
        report.pair_counts[static_cast<std::size_t>(i)];
  return {{"spec",
           {{"a", spec.env.a()},
            {"b", spec.env.b()},
            {"c", spec.env.c()},
            {"s", spec.s},
            {"depth", spec.depth},
            {"steps", spec.steps},
            {"tail_window", spec.tail_window},
            {"base_seed", spec.base_seed}}},
          {"trials", report.trials},
          {"pair_counts", counts},
          {"prediction", to_codes(report.prediction)},
          {"verdict", to_string(report.verdict)},
          {"confidence", report.confidence}};
}

/// Inverse of to_json(experiment_report); the round trip reproduces the
/// report exactly, including every floating-point field.
[[nodiscard]] inline experiment_report report_from_json(const nlohmann::json& j) {
  const nlohmann::json& js = j.at("spec");
  experiment_report report;
  report.spec.env = one_bit_env(js.at("a").get<double>(), js.at("b").get<double>(),
                                js.at("c").get<double>());
  report.spec.s = js.at("s").get<double>();
  report.spec.depth = js.at("depth").get<int>();
  report.spec.steps = js.at("steps").get<std::int64_t>();
  report.spec.tail_window = js.at("tail_window").get<std::int64_t>();
  report.spec.base_seed = js.at("base_seed").get<std::uint64_t>();
  report.trials = j.at("trials").get<std::int64_t>();
  const nlohmann::json& counts = j.at("pair_counts");
  for (int i = 0; i < action_pair_count; ++i)
    report.pair_counts[static_cast<std::size_t>(i)] =
        counts.at(to_code(static_cast<action_pair>(i))).get<std::int64_t>();
  report.prediction = prediction_from_codes(j.at("prediction").get<std::vector<std::string>>());
  report.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  report.confidence = j.at("confidence").get<double>();
  return report;
}

[[nodiscard]] inline std::string report_csv_header() {
  return "a,b,c,s,N,steps,trials,count_EE,count_IE,count_EI,count_II,predicted,verdict";
}

[[nodiscard]] inline std::string report_csv_row(const experiment_report& report) {
  const trial_spec& spec = report.spec;
  std::string row;
  row += fmt_double(spec.env.a()) + ",";
  row += fmt_double(spec.env.b()) + ",";
  row += fmt_double(spec.env.c()) + ",";
  row += fmt_double(spec.s) + ",";
  row += std::to_string(spec.depth) + ",";
  row += std::to_string(spec.steps) + ",";
  row += std::to_string(report.trials);
  for (int i = 0; i < action_pair_count; ++i)
    row += "," + std::to_string(report.pair_counts[static_cast<std::size_t>(i)]);
  row += "," + prediction_label(report.prediction);
  row += "," + to_string(report.verdict);
  return row;
}

}  // namespace tmconv
