#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/rng.hpp"

namespace plsat {

// One Monte Carlo trial. Identical (dist, n, seed) reproduce the identical
// record except for the timing fields.
struct TrialRecord {
  std::string dist;
  std::int64_t n = 0;
  std::uint64_t seed = 0;  // derived stream seed; plsat gen --seed <seed> regenerates
  FormulaStats stats;
  std::string verdict;  // SAT | UNSAT | ERROR
  std::string error;
  std::string tspan = "-";  // - | found | exhausted | subcritical | alpha_le_2
  std::int64_t tspan_found_var = 0;
  std::int64_t gen_ms = 0;
  std::int64_t solve_ms = 0;
};

struct SweepConfig {
  std::vector<std::string> dists;  // zeta:<b> | pareto:<a> | const:<d>
  std::vector<std::int64_t> ns;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  int k = 2;
  bool run_tspan = false;
  bool run_probes = false;  // adds a per-cell bicycle-count summary (JSON only)
  bool emit_dimacs = false;
  std::string out_csv = "sweep.csv";
  std::string out_json = "sweep.json";
  std::string dimacs_dir = ".";
  int threads = 0;  // 0 = hardware concurrency
  int probe_max_len = 25;

  static SweepConfig from_json_file(const std::string& path);
  static SweepConfig from_json_text(const std::string& text);
  void validate() const;  // throws std::invalid_argument
};

struct CellSummary {
  std::string dist;
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::int64_t sat = 0;
  std::int64_t unsat = 0;
  std::int64_t errors = 0;
  double sat_fraction = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::int64_t tspan_found = 0;
  std::int64_t tspan_exhausted = 0;
  std::int64_t tspan_skipped = 0;
  double mean_ratio = 0.0;
  double mean_bicycles = -1.0;  // run_probes only
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (cell, trial)
  std::vector<CellSummary> cells;
};

// Pure derivation of a trial's stream seed from (master, cell, trial).
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial);

// 95% Wilson score interval for successes/total.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t total);

TrialRecord run_trial(const SweepConfig& config, std::int64_t cell_index,
                      const std::string& dist_text, std::int64_t n, std::int64_t trial_index);

// Runs every (dist, n) cell for config.trials trials over a worker pool,
// gathers records in (cell, trial) order, and writes the CSV and JSON
// outputs. CSV columns (schema v1, stated in the leading comment line):
//   dist,n,seed,Sn,Tn,Delta,ratio,verdict,tspan,gen_ms,solve_ms
SweepResult run_sweep(const SweepConfig& config);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::string sweep_summary_json(const SweepConfig& config, const SweepResult& result);

}  // namespace plsat
