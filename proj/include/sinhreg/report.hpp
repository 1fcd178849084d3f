#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sinhreg/bench.hpp"

namespace sinhreg {

/// Ordered key/value metadata written ahead of every artifact.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Six significant digits in scientific notation ("1.74580e-07").
std::string format_sci(double value);

/// "# key: value" lines.
void write_metadata(std::ostream& out, const Metadata& meta);

/// One row per cell:
/// family,window,delta,N,M,trials,mean_max_error,bound_main,out_of_theory
void write_cells_csv(std::ostream& out, const ErrorReport& report, const Metadata& meta);

/// Full report including per-trial errors and the configuration.
void write_report_json(std::ostream& out, const ErrorReport& report, const Metadata& meta);

/// Result-table layout for one delta:
/// N,no,Gaussian,sinh,N,periodic-no,periodic-Gaussian,periodic-sinh,out_of_theory
/// Row i pairs the i-th non-periodic N with the i-th periodic N. The trailing
/// column is 1 when any cell of the row is out of theory.
void write_table_csv(std::ostream& out, const ErrorReport& nonperiodic, const ErrorReport& periodic,
                     double delta, const Metadata& meta);

/// Plottable convergence data for one family:
/// delta,N,log10_no,log10_gaussian,log10_sinh,log10_bound
void write_figure_csv(std::ostream& out, const ErrorReport& report, Family family, const Metadata& meta);

/// Human-readable description of failed cells, one per line.
std::string failure_log(const ErrorReport& report);

enum class Profile { Full, Ci };
Profile parse_profile(std::string_view text);
std::string_view to_string(Profile profile);

struct TableDelta {
  double value;
  std::string label;
};

/// pi/2, 2pi/3, 5pi/6.
std::vector<TableDelta> table_deltas();

/// The experiment behind one half of the result tables: non-periodic
/// N = 6, 9, ..., 39 or periodic N = 2..13 with M = 3, all three windows,
/// 100 trials (full) or 10 trials (ci). Out-of-theory cells are run and flagged.
ExperimentConfig table_experiment(Family family, Profile profile, std::uint64_t base_seed);

}  // namespace sinhreg
