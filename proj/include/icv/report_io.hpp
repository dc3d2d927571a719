#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icv/simharness.hpp"

namespace icv {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

struct Dataset {
  std::vector<double> values;
  std::string column;  // header name, or "1", "2", ... without a header
  std::size_t ties = 0;  // values equal to an earlier value
};

/// Plain text or CSV, one observation per row. Lines starting with '#' and
/// blank lines are skipped; a first row with no numeric field is a header.
/// `column` is a header name or a 1-based index; empty selects the first
/// column. Non-numeric fields raise Errc::parse_error naming the line, fewer
/// than `min_values` observations Errc::insufficient_data.
Dataset read_dataset(std::istream& in, const std::string& column = {},
                     std::size_t min_values = 2);
Dataset read_dataset_file(const std::string& path, const std::string& column = {},
                          std::size_t min_values = 2);

/// Flat key=value study description: density, n, replications, seed,
/// selectors (comma list of lscv, icv, icv-star), and optionally alpha and
/// sigma together for a manual kernel. '#' starts a comment. Unknown keys and
/// bad values raise Errc::parse_error naming the line and field. A missing
/// seed is left at 0 and reported through `seed_given`.
struct ParsedStudyConfig {
  StudyConfig config;
  bool seed_given = false;
};
ParsedStudyConfig parse_study_config(std::istream& in);

/// One row per (density, n, selector, statistic, value); ĥ₀ appears as
/// selector "ise".
void write_summary_csv(std::ostream& out, const SimulationSummary& summary);

/// Summary with the full config echo and failure counts.
void write_summary_json(std::ostream& out, const SimulationSummary& summary);

/// Long format (rep_index, selector, bandwidth, h0, ise_ratio), ordered by
/// rep_index then selector, preceded by '#' lines giving corr(ĥ, ĥ₀) per
/// selector. Failed records are included and flagged in a status column.
void write_distribution_csv(std::ostream& out, const StudyResult& result);

/// Human-readable block in the layout of a simulation results table.
std::string format_summary_table(const SimulationSummary& summary);

}  // namespace icv
