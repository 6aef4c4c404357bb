#pragma once

#include <map>
#include <string>
#include <vector>

#include "coupler/model.hpp"
#include "coupler/scenario.hpp"

namespace coupler {

// Photon-number distribution of one selection along the grid; rows[i][n].
struct DistributionTable {
  ModeSelection modes;
  std::vector<std::vector<double>> rows;
};

struct SweepResult {
  std::string name;
  std::vector<double> z;
  std::vector<std::string> columns;          // without the leading "z"
  std::vector<std::vector<double>> rows;     // rows[i][c]; NaN marks "not applicable"
  std::vector<DistributionTable> distributions;
  std::vector<GaussianState> states;         // state at every grid point
  std::map<std::string, std::string> metadata;
};

// Column names the observables produce, in output order.
std::vector<std::string> column_names(const ScenarioConfig& cfg);

// Grid points distributed over OpenMP threads; the result does not depend on
// the thread count.
SweepResult run_scenario(const ScenarioConfig& cfg);
// Same computation on one thread.
SweepResult run_scenario_serial(const ScenarioConfig& cfg);

// "z,<col>,..." with 12 significant digits, LF line endings, NA for NaN.
std::string format_csv(const SweepResult& result);
// "z,<sel>.p0,...,<sel>.p<n_max>,..." for every distribution; empty when none.
std::string format_distribution_csv(const SweepResult& result);

// Path of the distribution file belonging to `path`: "out/fig3.csv" ->
// "out/fig3.pn.csv".
std::string distribution_path(const std::string& path);

// Writes the table (and the distribution file when present). Throws Error
// with the path on I/O failure. Returns the files written.
std::vector<std::string> emit_csv(const SweepResult& result, const std::string& path);

}  // namespace coupler
