#include "sinhreg/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sinhreg/errors.hpp"

namespace sinhreg {
namespace {

using std::numbers::pi;

std::string format_log10(double value) {
  if (!(value > 0.0)) return value == 0.0 ? "-inf" : "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", std::log10(value));
  return buf;
}

std::string cell_value(const CellResult* cell) {
  if (cell == nullptr || cell->failed) return "nan";
  return format_sci(cell->mean_max_error);
}

std::vector<int> distinct_n(const ErrorReport& report, Family family) {
  std::vector<int> ns;
  for (const auto& c : report.cells) {
    if (c.family == family && std::find(ns.begin(), ns.end(), c.n_half) == ns.end()) ns.push_back(c.n_half);
  }
  return ns;
}

}  // namespace

std::string format_sci(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
}

void write_cells_csv(std::ostream& out, const ErrorReport& report, const Metadata& meta) {
  write_metadata(out, meta);
  out << "family,window,delta,N,M,trials,mean_max_error,bound_main,out_of_theory\n";
  for (const auto& c : report.cells) {
    out << to_string(c.family) << ',' << to_string(c.window) << ',' << format_sci(c.delta) << ','
        << c.n_half << ',' << c.period_m << ',' << c.trials << ','
        << (c.failed ? std::string("nan") : format_sci(c.mean_max_error)) << ',' << format_sci(c.bound_main)
        << ',' << (c.out_of_theory ? 1 : 0) << '\n';
  }
}

void write_report_json(std::ostream& out, const ErrorReport& report, const Metadata& meta) {
  using nlohmann::json;
  const auto& cfg = report.config;
  json doc;
  json jmeta = json::object();
  for (const auto& [k, v] : meta) jmeta[k] = v;
  doc["metadata"] = jmeta;
  json jcfg;
  jcfg["deltas"] = cfg.deltas;
  jcfg["n_values"] = cfg.n_values;
  jcfg["m_period"] = cfg.m_period;
  std::vector<std::string> fams;
  for (auto f : cfg.families) fams.emplace_back(to_string(f));
  std::vector<std::string> wins;
  for (auto w : cfg.windows) wins.emplace_back(to_string(w));
  jcfg["families"] = fams;
  jcfg["windows"] = wins;
  jcfg["trials"] = cfg.trials;
  jcfg["base_seed"] = cfg.base_seed;
  jcfg["grid_points"] = cfg.grid_points;
  jcfg["min_sep"] = cfg.nodes.min_sep;
  jcfg["max_perturb"] = cfg.nodes.max_perturb;
  jcfg["min_gap"] = cfg.nodes.min_gap;
  jcfg["allow_out_of_theory"] = cfg.allow_out_of_theory;
  doc["config"] = jcfg;
  json cells = json::array();
  for (const auto& c : report.cells) {
    json jc;
    jc["family"] = to_string(c.family);
    jc["window"] = to_string(c.window);
    jc["delta"] = c.delta;
    jc["N"] = c.n_half;
    jc["M"] = c.period_m;
    jc["trials"] = c.trials;
    jc["bound_main"] = c.bound_main;
    jc["out_of_theory"] = c.out_of_theory;
    jc["failed"] = c.failed;
    if (c.failed) {
      jc["failure"] = c.failure;
    } else {
      jc["mean_max_error"] = c.mean_max_error;
      jc["per_trial_errors"] = c.per_trial_errors;
    }
    cells.push_back(std::move(jc));
  }
  doc["cells"] = std::move(cells);
  out << doc.dump(2) << '\n';
}

void write_table_csv(std::ostream& out, const ErrorReport& nonperiodic, const ErrorReport& periodic,
                     double delta, const Metadata& meta) {
  write_metadata(out, meta);
  out << "N,no,Gaussian,sinh,N,periodic-no,periodic-Gaussian,periodic-sinh,out_of_theory\n";
  const auto left = distinct_n(nonperiodic, Family::NonPeriodic);
  const auto right = distinct_n(periodic, Family::Periodic);
  const std::size_t rows = std::max(left.size(), right.size());
  constexpr WindowKind kOrder[] = {WindowKind::None, WindowKind::Gaussian, WindowKind::Sinh};
  for (std::size_t r = 0; r < rows; ++r) {
    bool flagged = false;
    auto half = [&](const ErrorReport& rep, Family fam, const std::vector<int>& ns) {
      if (r >= ns.size()) {
        out << ",,,";
        return;
      }
      out << ns[r];
      for (WindowKind w : kOrder) {
        const CellResult* c = rep.find(fam, w, delta, ns[r]);
        if (c != nullptr && c->out_of_theory) flagged = true;
        out << ',' << cell_value(c);
      }
    };
    half(nonperiodic, Family::NonPeriodic, left);
    out << ',';
    half(periodic, Family::Periodic, right);
    out << ',' << (flagged ? 1 : 0) << '\n';
  }
}

void write_figure_csv(std::ostream& out, const ErrorReport& report, Family family, const Metadata& meta) {
  write_metadata(out, meta);
  out << "delta,N,log10_no,log10_gaussian,log10_sinh,log10_bound\n";
  const auto ns = distinct_n(report, family);
  const int period = family == Family::Periodic ? report.config.m_period : 1;
  for (double delta : report.config.deltas) {
    for (int n : ns) {
      out << format_sci(delta) << ',' << n;
      for (WindowKind w : {WindowKind::None, WindowKind::Gaussian, WindowKind::Sinh}) {
        const CellResult* c = report.find(family, w, delta, n);
        out << ',' << ((c == nullptr || c->failed) ? std::string("nan") : format_log10(c->mean_max_error));
      }
      out << ',' << format_log10(theoretical_bound_main(family, n, period, delta)) << '\n';
    }
  }
}

std::string failure_log(const ErrorReport& report) {
  std::ostringstream os;
  for (const auto& c : report.cells) {
    if (!c.failed) continue;
    os << to_string(c.family) << ' ' << to_string(c.window) << " delta=" << format_sci(c.delta)
       << " N=" << c.n_half << ": " << c.failure << '\n';
  }
  return os.str();
}

Profile parse_profile(std::string_view text) {
  if (text == "full") return Profile::Full;
  if (text == "ci") return Profile::Ci;
  throw ConfigurationError("unknown profile '" + std::string(text) + "' (expected full or ci)");
}

std::string_view to_string(Profile profile) { return profile == Profile::Full ? "full" : "ci"; }

std::vector<TableDelta> table_deltas() {
  return {{pi / 2.0, "pi/2"}, {2.0 * pi / 3.0, "2pi/3"}, {5.0 * pi / 6.0, "5pi/6"}};
}

ExperimentConfig table_experiment(Family family, Profile profile, std::uint64_t base_seed) {
  ExperimentConfig cfg;
  for (const auto& d : table_deltas()) cfg.deltas.push_back(d.value);
  if (family == Family::NonPeriodic) {
    for (int n = 6; n <= 39; n += 3) cfg.n_values.push_back(n);
  } else {
    for (int n = 2; n <= 13; ++n) cfg.n_values.push_back(n);
  }
  cfg.m_period = 3;
  cfg.families = {family};
  cfg.windows = {WindowKind::None, WindowKind::Gaussian, WindowKind::Sinh};
  cfg.trials = profile == Profile::Full ? 100 : 10;
  cfg.base_seed = base_seed;
  cfg.grid_points = 201;
  cfg.allow_out_of_theory = true;
  return cfg;
}

}  // namespace sinhreg
