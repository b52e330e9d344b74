// tmconv -- command-line front end for the one-bit convergence lab.
//
// Subcommands: thresholds, predict, chains, stationary, simulate, verify,
// sweep. Exit codes: 0 success (and Consistent verdicts), 1 Inconsistent
// verify verdict, 2 invalid arguments or degenerate thresholds, 3 internal
// contract violations, 4 Indeterminate verify verdict.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tmconv/tmconv.hpp>

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_inconsistent = 1;
constexpr int exit_bad_args = 2;
constexpr int exit_internal = 3;
constexpr int exit_indeterminate = 4;

constexpr double work_budget = 1e9;  // steps * trials guard without --force

struct env_options {
  bool noise_free_mode = false;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_b = nullptr;
  CLI::Option* opt_c = nullptr;
};

void add_env_options(CLI::App* cmd, env_options& opts) {
  CLI::Option* nf = cmd->add_flag("--noise-free", opts.noise_free_mode,
                                  "Use the noise-free environment a=1, b=0");
  opts.opt_a = cmd->add_option("-a,--a", opts.a, "P(y=1 | x=1)");
  opts.opt_b = cmd->add_option("-b,--b", opts.b, "P(y=1 | x=0)");
  opts.opt_c = cmd->add_option("-c,--c", opts.c, "P(x=1)")->required();
  nf->excludes(opts.opt_a);
  nf->excludes(opts.opt_b);
}

tmconv::one_bit_env make_env(const env_options& opts) {
  if (opts.noise_free_mode) return tmconv::noise_free(opts.c);
  if (opts.opt_a->count() == 0 || opts.opt_b->count() == 0)
    throw std::invalid_argument("specify -a and -b, or --noise-free");
  return {opts.a, opts.b, opts.c};
}

struct run_options {
  env_options env;
  double s = 2.0;
  int depth = 50;
  std::int64_t steps = 200'000;
  std::int64_t trials = 1'000;
  std::int64_t tail_window = 0;  // 0 -> steps / 10
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool force = false;
  std::string format = "json";
  std::string output;
  CLI::Option* opt_s = nullptr;
};

void add_run_options(CLI::App* cmd, run_options& opts, bool require_s) {
  add_env_options(cmd, opts.env);
  opts.opt_s = cmd->add_option("-s,--s", opts.s, "Granularity (s >= 1)");
  if (require_s) opts.opt_s->required();
  cmd->add_option("-N,--depth", opts.depth, "States per action")->capture_default_str();
  cmd->add_option("--steps", opts.steps, "Training steps per trial")->capture_default_str();
  cmd->add_option("--trials", opts.trials, "Independent trials")->capture_default_str();
  cmd->add_option("--tail-window", opts.tail_window,
                  "Steps classified as the tail (0 = steps/10)")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed,
                  "Base seed (the TMCONV_SEED environment variable overrides it)")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  cmd->add_flag("--force", opts.force, "Run even past the steps*trials budget");
  cmd->add_option("-o,--output", opts.output, "Write to a file instead of stdout");
}

/// Builds the trial spec from parsed options, applying the TMCONV_SEED
/// override and the tail-window default.
tmconv::trial_spec make_spec(const run_options& opts) {
  tmconv::trial_spec spec;
  spec.env = make_env(opts.env);
  spec.s = opts.s;
  spec.depth = opts.depth;
  spec.steps = opts.steps;
  spec.tail_window = opts.tail_window > 0 ? opts.tail_window : opts.steps / 10;
  spec.base_seed = opts.seed;
  if (const char* env_seed = std::getenv("TMCONV_SEED")) {
    const std::string text(env_seed);
    std::uint64_t parsed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw std::invalid_argument("TMCONV_SEED must be an unsigned integer, got '" + text + "'");
    spec.base_seed = parsed;
  }
  return spec;
}

void check_budget(std::int64_t steps, std::int64_t trials, std::int64_t points, bool force) {
  if (force) return;
  const double work = static_cast<double>(steps) * static_cast<double>(trials) *
                      static_cast<double>(points);
  if (work > work_budget)
    throw std::invalid_argument(
        "job size steps*trials exceeds 1e9; pass --force to run it anyway");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
}

int cmd_thresholds(const env_options& env_opts, bool as_json, const std::string& output) {
  const tmconv::one_bit_env env = make_env(env_opts);
  const tmconv::threshold_set t = tmconv::thresholds(env);
  const bool c_defined = env.a() > 0.0 && env.a() < 1.0 && env.b() > 0.0 && env.b() < 1.0;
  std::string text;
  json doc;
  doc["s"] = tmconv::to_json(t);
  doc["c"] = nullptr;
  text += "s1=" + tmconv::fmt_double(t.s1) + " s2=" + tmconv::fmt_double(t.s2) +
          " s3=" + tmconv::fmt_double(t.s3) + " s4=" + tmconv::fmt_double(t.s4) +
          " s5=" + tmconv::fmt_double(t.s5) + " s6=" + tmconv::fmt_double(t.s6) + "\n";
  if (c_defined) {
    const tmconv::c_threshold_set ct = tmconv::c_thresholds(env.a(), env.b());
    doc["c"] = tmconv::to_json(ct);
    text += "c1=" + tmconv::fmt_double(ct.c1) + " c2=" + tmconv::fmt_double(ct.c2) +
            " c3=" + tmconv::fmt_double(ct.c3) + " c4=" + tmconv::fmt_double(ct.c4) + "\n";
  } else {
    text += "c thresholds: undefined (require 0 < a < 1 and 0 < b < 1)\n";
  }
  emit(as_json ? doc.dump(2) + "\n" : text, output);
  return exit_ok;
}

int cmd_predict(const env_options& env_opts, double s, bool as_json,
                const std::string& output) {
  const tmconv::one_bit_env env = make_env(env_opts);
  const tmconv::region_prediction pred = tmconv::predict_regions(env, s);
  if (as_json) {
    const json doc = {{"s", s}, {"prediction", tmconv::to_codes(pred)}};
    emit(doc.dump(2) + "\n", output);
  } else {
    std::string text = "s=" + tmconv::fmt_double(s) +
                       " prediction=" + tmconv::prediction_label(pred);
    if (pred.empty()) text += " (no absorbing pair at this granularity)";
    emit(text + "\n", output);
  }
  return exit_ok;
}

int cmd_chains(const env_options& env_opts, double s, bool as_json,
               const std::string& output) {
  const tmconv::one_bit_env env = make_env(env_opts);
  struct row {
    const char* name;
    tmconv::birth_death_chain chain;
  };
  const row rows[] = {
      {"ta1_peer_exclude", tmconv::ta1_chain(env, s, tmconv::action_kind::exclude)},
      {"ta1_peer_include", tmconv::ta1_chain(env, s, tmconv::action_kind::include)},
      {"ta2_peer_exclude", tmconv::ta2_chain(env, s, tmconv::action_kind::exclude)},
      {"ta2_peer_include", tmconv::ta2_chain(env, s, tmconv::action_kind::include)},
  };
  if (as_json) {
    json doc;
    for (const row& r : rows) {
      json entry = tmconv::to_json(r.chain);
      entry.erase("depth");  // rates are depth-independent
      entry["limit"] =
          tmconv::to_string(tmconv::asymptotic_action(r.chain.alpha, r.chain.beta, r.chain.gamma));
      doc[r.name] = entry;
    }
    emit(doc.dump(2) + "\n", output);
  } else {
    std::string text;
    for (const row& r : rows)
      text += std::string(r.name) + ": alpha=" + tmconv::fmt_double(r.chain.alpha) +
              " beta=" + tmconv::fmt_double(r.chain.beta) +
              " gamma=" + tmconv::fmt_double(r.chain.gamma) + " limit=" +
              tmconv::to_string(
                  tmconv::asymptotic_action(r.chain.alpha, r.chain.beta, r.chain.gamma)) +
              "\n";
    emit(text, output);
  }
  return exit_ok;
}

int cmd_stationary(double alpha, double beta, double gamma, int depth, bool as_json,
                   const std::string& output) {
  const tmconv::birth_death_chain chain{alpha, beta, gamma, depth};
  const tmconv::stationary_dist dist = tmconv::stationary(chain);
  const double mass = tmconv::include_mass(dist, depth);
  if (as_json) {
    json doc;
    doc["include_mass"] = mass;
    doc["pi"] = dist.pi;
    emit(doc.dump(2) + "\n", output);
  } else {
    std::string text = "include_mass=" + tmconv::fmt_double(mass) + "\npi=";
    for (std::size_t i = 0; i < dist.pi.size(); ++i)
      text += (i ? " " : "") + tmconv::fmt_double(dist.pi[i]);
    emit(text + "\n", output);
  }
  return exit_ok;
}

int run_and_emit(const run_options& opts, bool verdict_exit) {
  const tmconv::trial_spec spec = make_spec(opts);
  check_budget(opts.steps, opts.trials, 1, opts.force);
  const tmconv::experiment_report report =
      tmconv::run_experiment(spec, opts.trials, opts.threads);
  if (opts.format == "json") {
    emit(tmconv::to_json(report).dump(2) + "\n", opts.output);
  } else if (opts.format == "csv") {
    emit(tmconv::report_csv_header() + "\n" + tmconv::report_csv_row(report) + "\n",
         opts.output);
  } else {
    throw std::invalid_argument("unknown format '" + opts.format + "' (json or csv)");
  }
  if (!verdict_exit) return exit_ok;
  switch (report.verdict) {
    case tmconv::verdict_kind::consistent: return exit_ok;
    case tmconv::verdict_kind::inconsistent: return exit_inconsistent;
    case tmconv::verdict_kind::indeterminate: return exit_indeterminate;
  }
  return exit_internal;
}

struct sweep_options {
  run_options run;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  CLI::Option* opt_s_from = nullptr;
  CLI::Option* opt_c_from = nullptr;
  double s_from = 0.0, s_to = 0.0, s_step = 0.0;
  double c_from = 0.0, c_to = 0.0, c_step = 0.0;
};

std::vector<double> make_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
  if (to < from) throw std::invalid_argument("sweep: to must be >= from");
  std::vector<double> values;
  const auto count = static_cast<std::int64_t>((to - from) / step + 1e-9) + 1;
  values.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i)
    values.push_back(from + static_cast<double>(i) * step);
  return values;
}

int cmd_sweep(const sweep_options& opts) {
  const bool over_s = opts.opt_s_from->count() > 0;
  const bool over_c = opts.opt_c_from->count() > 0;
  if (over_s == over_c)
    throw std::invalid_argument("sweep: specify exactly one of --s-from and --c-from");
  if (over_s && opts.run.env.opt_c->count() == 0)
    throw std::invalid_argument("sweep over s: fix the input bias with -c");
  if (over_c && opts.run.opt_s->count() == 0)
    throw std::invalid_argument("sweep over c: fix the granularity with -s");
  const std::vector<double> grid = over_s ? make_grid(opts.s_from, opts.s_to, opts.s_step)
                                          : make_grid(opts.c_from, opts.c_to, opts.c_step);
  const tmconv::trial_spec base = make_spec(opts.run);
  check_budget(opts.run.steps, opts.run.trials, static_cast<std::int64_t>(grid.size()),
               opts.run.force);
  const std::vector<tmconv::experiment_report> reports =
      over_s ? tmconv::sweep_s(base, opts.run.trials, grid, opts.run.threads)
             : tmconv::sweep_c(base, opts.run.trials, grid, opts.run.threads);
  if (opts.run.format == "json") {
    json doc = json::array();
    for (const tmconv::experiment_report& r : reports) doc.push_back(tmconv::to_json(r));
    emit(doc.dump(2) + "\n", opts.run.output);
  } else if (opts.run.format == "csv") {
    std::string text = tmconv::report_csv_header() + "\n";
    for (const tmconv::experiment_report& r : reports)
      text += tmconv::report_csv_row(r) + "\n";
    emit(text, opts.run.output);
  } else {
    throw std::invalid_argument("unknown format '" + opts.run.format + "' (json or csv)");
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-bit Tsetlin machine convergence lab"};
  app.require_subcommand(1);

  // thresholds
  env_options th_env;
  bool th_json = false;
  std::string th_output;
  CLI::App* th = app.add_subcommand("thresholds", "Granularity and input-bias thresholds");
  add_env_options(th, th_env);
  th->add_flag("--json", th_json, "Emit JSON");
  th->add_option("-o,--output", th_output, "Write to a file instead of stdout");

  // predict
  env_options pr_env;
  double pr_s = 0.0;
  bool pr_json = false;
  std::string pr_output;
  CLI::App* pr = app.add_subcommand("predict", "Absorbing action pairs at a granularity");
  add_env_options(pr, pr_env);
  pr->add_option("-s,--s", pr_s, "Granularity (s >= 1)")->required();
  pr->add_flag("--json", pr_json, "Emit JSON");
  pr->add_option("-o,--output", pr_output, "Write to a file instead of stdout");

  // chains
  env_options ch_env;
  double ch_s = 0.0;
  bool ch_json = false;
  std::string ch_output;
  CLI::App* ch = app.add_subcommand("chains", "Conditional chain rates for all peer actions");
  add_env_options(ch, ch_env);
  ch->add_option("-s,--s", ch_s, "Granularity (s >= 1)")->required();
  ch->add_flag("--json", ch_json, "Emit JSON");
  ch->add_option("-o,--output", ch_output, "Write to a file instead of stdout");

  // stationary
  double st_alpha = 0.0, st_beta = 0.0, st_gamma = 0.0;
  int st_depth = 1;
  bool st_json = false;
  std::string st_output;
  CLI::App* st = app.add_subcommand("stationary", "Stationary distribution of a chain");
  st->add_option("--alpha", st_alpha, "Rightward rate")->required();
  st->add_option("--beta", st_beta, "Leftward rate, include half")->required();
  st->add_option("--gamma", st_gamma, "Leftward rate, exclude half")->required();
  st->add_option("-N,--depth", st_depth, "States per action")->required();
  st->add_flag("--json", st_json, "Emit JSON");
  st->add_option("-o,--output", st_output, "Write to a file instead of stdout");

  // simulate / verify
  run_options sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "Run trials and report outcome counts");
  add_run_options(sim, sim_opts, true);
  sim->add_option("--format", sim_opts.format, "json or csv")->capture_default_str();

  run_options ver_opts;
  CLI::App* ver = app.add_subcommand(
      "verify", "Run trials and exit by verdict (0/1/4 = consistent/inconsistent/indeterminate)");
  add_run_options(ver, ver_opts, true);
  ver->add_option("--format", ver_opts.format, "json or csv")->capture_default_str();

  // sweep: one of s and c comes from the grid, the other stays fixed
  sweep_options sw_opts;
  CLI::App* sw = app.add_subcommand("sweep", "Grid of experiments over s or c");
  add_run_options(sw, sw_opts.run, false);
  sw_opts.run.env.opt_c->required(false);
  sw_opts.run.format = "csv";
  sw->add_option("--format", sw_opts.run.format, "csv or json")->capture_default_str();
  sw_opts.opt_s_from = sw->add_option("--s-from", sw_opts.s_from, "Granularity grid start");
  CLI::Option* s_to = sw->add_option("--s-to", sw_opts.s_to, "Granularity grid end");
  CLI::Option* s_step = sw->add_option("--s-step", sw_opts.s_step, "Granularity grid step");
  sw_opts.opt_c_from = sw->add_option("--c-from", sw_opts.c_from, "Input bias grid start");
  CLI::Option* c_to = sw->add_option("--c-to", sw_opts.c_to, "Input bias grid end");
  CLI::Option* c_step = sw->add_option("--c-step", sw_opts.c_step, "Input bias grid step");
  sw_opts.opt_s_from->needs(s_to);
  sw_opts.opt_s_from->needs(s_step);
  sw_opts.opt_s_from->excludes(sw_opts.run.opt_s);
  sw_opts.opt_c_from->needs(c_to);
  sw_opts.opt_c_from->needs(c_step);
  sw_opts.opt_c_from->excludes(sw_opts.run.env.opt_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_bad_args;
  }

  try {
    if (th->parsed()) return cmd_thresholds(th_env, th_json, th_output);
    if (pr->parsed()) return cmd_predict(pr_env, pr_s, pr_json, pr_output);
    if (ch->parsed()) return cmd_chains(ch_env, ch_s, ch_json, ch_output);
    if (st->parsed())
      return cmd_stationary(st_alpha, st_beta, st_gamma, st_depth, st_json, st_output);
    if (sim->parsed()) return run_and_emit(sim_opts, false);
    if (ver->parsed()) return run_and_emit(ver_opts, true);
    if (sw->parsed()) return cmd_sweep(sw_opts);
  } catch (const tmconv::undefined_threshold_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_args;
  } catch (const tmconv::degenerate_chain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal;
  } catch (const tmconv::contract_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_args;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_bad_args;
}
