#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "config_file.hpp"
#include "selftest.hpp"
#include "sinhreg/bench.hpp"
#include "sinhreg/errors.hpp"
#include "sinhreg/reconstruct.hpp"
#include "sinhreg/report.hpp"
#include "sinhreg/signals.hpp"

#ifndef SINHREG_BUILD_ID
#define SINHREG_BUILD_ID "unknown"
#endif

namespace sinhreg::cli {
namespace fs = std::filesystem;

std::string build_id() { return SINHREG_BUILD_ID; }

namespace {

struct Common {
  unsigned threads = 0;
  std::string out_dir;
  bool inject_fault = false;
};

// Restores the window fault hook however run_cli exits.
struct FaultGuard {
  explicit FaultGuard(bool on) { testing::set_window_sign_fault(on); }
  ~FaultGuard() { testing::set_window_sign_fault(false); }
};

fs::path resolve_out_dir(const Common& common) {
  std::string dir = common.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SINHREG_OUTPUT_DIR");
    dir = (env != nullptr && *env != '\0') ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigurationError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigurationError("cannot write '" + path.string() + "'");
  body(file);
  file.close();
  if (!file) throw ConfigurationError("error while writing '" + path.string() + "'");
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += fmt(xs[i]);
  }
  return s;
}

// Everything that determines the numbers in an artifact. Thread count is
// deliberately absent: outputs do not depend on it.
Metadata experiment_metadata(const std::string& command, const ExperimentConfig& cfg) {
  return {
      {"tool", "sinhreg " + command},
      {"build", build_id()},
      {"deltas", join(cfg.deltas, full)},
      {"n_values", join(cfg.n_values, [](int n) { return std::to_string(n); })},
      {"m_period", std::to_string(cfg.m_period)},
      {"families", join(cfg.families, [](Family f) { return std::string(to_string(f)); })},
      {"windows", join(cfg.windows, [](WindowKind w) { return std::string(to_string(w)); })},
      {"trials", std::to_string(cfg.trials)},
      {"base_seed", std::to_string(cfg.base_seed)},
      {"rng", "mt19937_64, trial seed = base_seed xor trial"},
      {"grid_points", std::to_string(cfg.grid_points)},
      {"min_sep", full(cfg.nodes.min_sep)},
      {"max_perturb", full(cfg.nodes.max_perturb)},
      {"min_gap", full(cfg.nodes.min_gap)},
      {"allow_out_of_theory", cfg.allow_out_of_theory ? "true" : "false"},
  };
}

Metadata with(Metadata meta, std::initializer_list<std::pair<std::string, std::string>> extra) {
  meta.insert(meta.begin() + 2, extra.begin(), extra.end());
  return meta;
}

void write_failure_sidecar(const fs::path& path, const std::vector<const ErrorReport*>& reports) {
  std::string log;
  for (const auto* r : reports) log += failure_log(*r);
  if (log.empty()) {
    std::error_code ec;
    fs::remove(path, ec);
    return;
  }
  write_file(path, [&](std::ostream& o) { o << log; });
}

// ---- reconstruct -------------------------------------------------------

struct ReconstructArgs {
  std::string delta = "pi/2";
  int n = 12;
  std::string family = "nonperiodic";
  std::string window = "sinh";
  std::uint64_t seed = 1;
  int m_period = 3;
  std::string signal = "test";
  std::string range = "-1:1:201";
  std::string points_file;
  std::string nodes_file;
  double min_sep = 1e-3;
  double max_perturb = 0.999;
  double min_gap = 1e-3;
  bool allow_out_of_theory = false;
  std::string output = "reconstruct.csv";
};

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open '" + path + "'");
  std::vector<double> xs;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::logic_error&) {
      throw ConfigurationError("'" + path + "': not a number: '" + token + "'");
    }
  }
  return xs;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ConfigurationError("--range must be a:b:count");
  double a = 0.0;
  double b = 0.0;
  int count = 0;
  try {
    a = std::stod(parts[0]);
    b = std::stod(parts[1]);
    count = std::stoi(parts[2]);
  } catch (const std::logic_error&) {
    throw ConfigurationError("--range must be a:b:count");
  }
  if (count < 1 || !(a <= b)) throw ConfigurationError("--range needs a <= b and count >= 1");
  if (count == 1) return {a};
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) xs.push_back(a + (b - a) * i / (count - 1));
  return xs;
}

int cmd_reconstruct(const ReconstructArgs& a, const Common& common, std::ostream& out) {
  const double delta = parse_delta(a.delta);
  const Family family = parse_family(a.family);
  const WindowKind window = parse_window_kind(a.window);
  SignalSpec signal;
  if (a.signal == "test") {
    signal = SignalSpec::test_function(delta);
  } else if (a.signal == "sinc") {
    signal = SignalSpec::sinc_pure(delta);
  } else {
    throw ConfigurationError("--signal must be test or sinc");
  }
  signal.validate();
  PlanOptions options;
  options.allow_out_of_theory = a.allow_out_of_theory;

  std::string node_source = "seed " + std::to_string(a.seed);
  auto make_plan = [&]() -> ReconstructionPlan {
    if (family == Family::NonPeriodic) {
      if (!a.nodes_file.empty()) {
        node_source = "file " + a.nodes_file;
        NodeSetOptions nopt;
        nopt.allow_out_of_theory = a.allow_out_of_theory;
        nopt.separation_floor = a.min_sep;
        return ReconstructionPlan::non_periodic(NodeSet(read_numbers(a.nodes_file), nopt), delta, window,
                                                options);
      }
      if (a.n < 1) throw ConfigurationError("--n must be >= 1");
      return ReconstructionPlan::non_periodic(generate_nodes(a.n, a.seed, a.min_sep, a.max_perturb), delta,
                                              window, options);
    }
    if (!a.nodes_file.empty()) {
      node_source = "file " + a.nodes_file;
      return ReconstructionPlan::periodic(PeriodicNodeSet(read_numbers(a.nodes_file), a.n), delta, window,
                                          options);
    }
    return ReconstructionPlan::periodic(generate_periodic_offsets(a.m_period, a.n, a.seed, a.min_gap), delta,
                                        window, options);
  };
  const ReconstructionPlan plan = make_plan();
  const std::vector<double> xs = a.points_file.empty() ? parse_range(a.range) : read_numbers(a.points_file);
  const SampleSet samples = take_samples(plan, signal);
  const std::vector<double> s = reconstruct_grid(plan, samples, xs, common.threads);

  const fs::path path = resolve_out_dir(common) / a.output;
  double worst = 0.0;
  const int flag = plan.out_of_theory() ? 1 : 0;
  write_file(path, [&](std::ostream& o) {
    write_metadata(o, {{"tool", "sinhreg reconstruct"},
                       {"build", build_id()},
                       {"delta", full(delta)},
                       {"N", std::to_string(plan.n_half())},
                       {"M", std::to_string(plan.period_m())},
                       {"family", std::string(to_string(family))},
                       {"window", std::string(to_string(window))},
                       {"beta", full(plan.beta())},
                       {"signal", a.signal},
                       {"nodes", node_source},
                       {"min_sep", full(a.min_sep)},
                       {"max_perturb", full(a.max_perturb)},
                       {"min_gap", full(a.min_gap)},
                       {"points", a.points_file.empty() ? "range " + a.range : "file " + a.points_file},
                       {"allow_out_of_theory", a.allow_out_of_theory ? "true" : "false"},
                       {"out_of_theory", std::to_string(flag)}});
    o << "x,f,S,abs_err,out_of_theory\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = signal_eval(signal, xs[i]);
      const double err = std::fabs(f - s[i]);
      worst = std::max(worst, err);
      o << full(xs[i]) << ',' << full(f) << ',' << full(s[i]) << ',' << full(err) << ',' << flag << '\n';
    }
  });
  out << "wrote " << path.string() << " (" << xs.size() << " points, max abs_err " << format_sci(worst)
      << (flag ? ", out of theory" : "") << ")\n";
  return kExitOk;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string config_path;
  std::string deltas;
  std::string n_values;
  std::string families;
  std::string windows;
  int m_period = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int grid_points = 0;
  double min_sep = 0.0;
  double max_perturb = 0.0;
  double min_gap = 0.0;
  bool allow_out_of_theory = false;
};

int cmd_sweep(const SweepArgs& a, const CLI::App& sub, const Common& common, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.deltas = {std::numbers::pi / 2.0};
  for (int n = 6; n <= 21; n += 3) cfg.n_values.push_back(n);
  cfg.families = {Family::NonPeriodic};
  cfg.windows = {WindowKind::None, WindowKind::Gaussian, WindowKind::Sinh};
  if (!a.config_path.empty()) apply_config(read_config_file(a.config_path), cfg);

  KeyValues flags;
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--deltas")) flags["deltas"] = a.deltas;
  if (given("--n-values")) flags["n_values"] = a.n_values;
  if (given("--families")) flags["families"] = a.families;
  if (given("--windows")) flags["windows"] = a.windows;
  if (given("--m")) flags["m_period"] = std::to_string(a.m_period);
  if (given("--trials")) flags["trials"] = std::to_string(a.trials);
  if (given("--seed")) flags["base_seed"] = std::to_string(a.seed);
  if (given("--grid-points")) flags["grid_points"] = std::to_string(a.grid_points);
  if (given("--min-sep")) flags["min_sep"] = full(a.min_sep);
  if (given("--max-perturb")) flags["max_perturb"] = full(a.max_perturb);
  if (given("--min-gap")) flags["min_gap"] = full(a.min_gap);
  if (given("--allow-out-of-theory")) flags["allow_out_of_theory"] = "true";
  apply_config(flags, cfg);
  cfg.validate();

  const ErrorReport report = run_experiment(cfg, common.threads);
  const fs::path dir = resolve_out_dir(common);
  const Metadata meta = experiment_metadata("sweep", cfg);
  write_file(dir / "sweep.csv", [&](std::ostream& o) { write_cells_csv(o, report, meta); });
  write_file(dir / "sweep.json", [&](std::ostream& o) { write_report_json(o, report, meta); });
  write_failure_sidecar(dir / "sweep_failures.log", {&report});
  out << "wrote " << (dir / "sweep.csv").string() << " and sweep.json (" << report.cells.size() << " cells)\n";
  if (report.any_failed()) {
    out << "some cells failed; see sweep_failures.log\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---- reproduce-tables / reproduce-figures ----------------------------------

struct ReproduceArgs {
  std::string profile = "full";
  std::uint64_t seed = 1;
};

struct TableRuns {
  ExperimentConfig np_cfg;
  ExperimentConfig p_cfg;
  ErrorReport nonperiodic;
  ErrorReport periodic;
};

TableRuns run_tables(const ReproduceArgs& a, const Common& common) {
  const Profile profile = parse_profile(a.profile);
  TableRuns runs;
  runs.np_cfg = table_experiment(Family::NonPeriodic, profile, a.seed);
  runs.p_cfg = table_experiment(Family::Periodic, profile, a.seed);
  runs.nonperiodic = run_experiment(runs.np_cfg, common.threads);
  runs.periodic = run_experiment(runs.p_cfg, common.threads);
  return runs;
}

Metadata table_metadata(const std::string& command, const ReproduceArgs& a, const TableRuns& runs) {
  Metadata meta = experiment_metadata(command, runs.np_cfg);
  meta.erase(std::remove_if(meta.begin(), meta.end(),
                            [](const auto& kv) { return kv.first == "n_values" || kv.first == "families"; }),
             meta.end());
  return with(meta, {{"profile", a.profile + (a.profile == "ci" ? " (10 trials instead of 100)" : "")},
                     {"n_values_nonperiodic", join(runs.np_cfg.n_values, [](int n) { return std::to_string(n); })},
                     {"n_values_periodic", join(runs.p_cfg.n_values, [](int n) { return std::to_string(n); })}});
}

int cmd_reproduce_tables(const ReproduceArgs& a, const Common& common, std::ostream& out) {
  const TableRuns runs = run_tables(a, common);
  const fs::path dir = resolve_out_dir(common);
  const Metadata meta = table_metadata("reproduce-tables", a, runs);
  const auto deltas = table_deltas();
  for (std::size_t t = 0; t < deltas.size(); ++t) {
    const std::string name = "table" + std::to_string(t + 1) + ".csv";
    write_file(dir / name, [&](std::ostream& o) {
      write_table_csv(o, runs.nonperiodic, runs.periodic, runs.np_cfg.deltas[t],
                      with(meta, {{"table", std::to_string(t + 1)}, {"delta_label", deltas[t].label}}));
    });
    out << "wrote " << (dir / name).string() << '\n';
  }
  write_file(dir / "tables_cells.csv", [&](std::ostream& o) {
    ErrorReport both = runs.nonperiodic;
    both.cells.insert(both.cells.end(), runs.periodic.cells.begin(), runs.periodic.cells.end());
    write_cells_csv(o, both, meta);
  });
  out << "wrote " << (dir / "tables_cells.csv").string() << '\n';
  write_failure_sidecar(dir / "tables_failures.log", {&runs.nonperiodic, &runs.periodic});
  if (runs.nonperiodic.any_failed() || runs.periodic.any_failed()) {
    out << "some cells failed; see tables_failures.log\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_reproduce_figures(const ReproduceArgs& a, const Common& common, std::ostream& out) {
  const TableRuns runs = run_tables(a, common);
  const fs::path dir = resolve_out_dir(common);
  const Metadata meta = table_metadata("reproduce-figures", a, runs);
  write_file(dir / "figure1.csv", [&](std::ostream& o) {
    write_figure_csv(o, runs.nonperiodic, Family::NonPeriodic, with(meta, {{"figure", "1 (non-periodic)"}}));
  });
  write_file(dir / "figure2.csv", [&](std::ostream& o) {
    write_figure_csv(o, runs.periodic, Family::Periodic, with(meta, {{"figure", "2 (periodic)"}}));
  });
  out << "wrote " << (dir / "figure1.csv").string() << " and figure2.csv\n";
  write_failure_sidecar(dir / "figures_failures.log", {&runs.nonperiodic, &runs.periodic});
  if (runs.nonperiodic.any_failed() || runs.periodic.any_failed()) return kExitCheckFailed;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sinh-regularized nonuniform sampling: reconstruction and convergence benchmarks", "sinhreg"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads (0 = all cores); never changes results");
  app.add_option("--out-dir", common.out_dir, "output directory (default $SINHREG_OUTPUT_DIR or .)");
  app.add_flag("--inject-fault", common.inject_fault)->group("");  // flips the sinh window sign
  app.set_version_flag("--version", build_id());

  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "reconstruct the test signal from one node draw");
  rec->add_option("--delta", ra.delta, "bandwidth, e.g. pi/2, 5pi/6, 1.2")->capture_default_str();
  rec->add_option("--n", ra.n, "N (node indices -N..N, or blocks for periodic)")->capture_default_str();
  rec->add_option("--family", ra.family, "nonperiodic | periodic")->capture_default_str();
  rec->add_option("--window", ra.window, "none | gaussian | sinh")->capture_default_str();
  rec->add_option("--seed", ra.seed, "node seed")->capture_default_str();
  rec->add_option("--m", ra.m_period, "period M (periodic)")->capture_default_str();
  rec->add_option("--signal", ra.signal, "test | sinc")->capture_default_str();
  auto* range_opt = rec->add_option("--range", ra.range, "evaluation points a:b:count")->capture_default_str();
  rec->add_option("--points-file", ra.points_file, "evaluation points, whitespace separated")->excludes(range_opt);
  rec->add_option("--nodes-file", ra.nodes_file, "explicit nodes (2N+1 lambdas, or M offsets for periodic)");
  rec->add_option("--min-sep", ra.min_sep)->capture_default_str();
  rec->add_option("--max-perturb", ra.max_perturb)->capture_default_str();
  rec->add_option("--min-gap", ra.min_gap)->capture_default_str();
  rec->add_flag("--allow-out-of-theory", ra.allow_out_of_theory, "permit beta < 1 or L >= 1 (flagged)");
  rec->add_option("--output", ra.output, "file name inside the output directory")->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "run an experiment grid; writes sweep.csv and sweep.json");
  sweep->add_option("--config", sa.config_path, "key = value file; flags override it");
  sweep->add_option("--deltas", sa.deltas, "comma list, e.g. pi/2,2pi/3");
  sweep->add_option("--n-values", sa.n_values, "comma list or first:last[:step]");
  sweep->add_option("--families", sa.families, "nonperiodic,periodic");
  sweep->add_option("--windows", sa.windows, "none,gaussian,sinh");
  sweep->add_option("--m", sa.m_period, "period M");
  sweep->add_option("--trials", sa.trials);
  sweep->add_option("--seed", sa.seed, "base seed");
  sweep->add_option("--grid-points", sa.grid_points);
  sweep->add_option("--min-sep", sa.min_sep);
  sweep->add_option("--max-perturb", sa.max_perturb);
  sweep->add_option("--min-gap", sa.min_gap);
  sweep->add_flag("--allow-out-of-theory", sa.allow_out_of_theory);

  ReproduceArgs ta;
  auto* tables = app.add_subcommand("reproduce-tables", "regenerate the three result tables");
  tables->add_option("--profile", ta.profile, "full (100 trials) | ci (10 trials)")->capture_default_str();
  tables->add_option("--seed", ta.seed, "base seed")->capture_default_str();

  ReproduceArgs fa;
  auto* figures = app.add_subcommand("reproduce-figures", "regenerate the convergence figure data");
  figures->add_option("--profile", fa.profile, "full | ci")->capture_default_str();
  figures->add_option("--seed", fa.seed, "base seed")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "run the fast invariant suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  FaultGuard guard(common.inject_fault);
  try {
    if (*rec) return cmd_reconstruct(ra, common, out);
    if (*sweep) return cmd_sweep(sa, *sweep, common, out);
    if (*tables) return cmd_reproduce_tables(ta, common, out);
    if (*figures) return cmd_reproduce_figures(fa, common, out);
    if (*selftest) return print_selftest(run_selftest(), out) ? kExitOk : kExitCheckFailed;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const GenerationError& e) {
    err << "node generation failed: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sinhreg::cli
