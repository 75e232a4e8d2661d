#pragma once

#include <string>
#include <vector>

#include "drk/analysis.hpp"
#include "drk/config.hpp"
#include "drk/presets.hpp"

namespace drk {

struct SeedResult {
  std::uint64_t seed = 0;
  double final_error = 0;
  long long iterations = 0;
  long long updates = 0;
  long long skips = 0;
  long long corrupted_updates = 0;
  std::string status;
  double precision = 1.0;
  double recall = 1.0;
  int blocked = 0;
};

struct CurvePoint {
  long long iteration = 0;
  std::uint64_t seed = 0;
  double error = 0;
  bool skipped = false;
};

struct BlockListRow {
  int worker = 0;
  int category = 0;
  long long counter = 0;
  long long participation = 0;
  bool blocked = false;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SeedResult> per_seed;
  std::vector<CurvePoint> curve;  // downsampled unless config.full_trace
  std::vector<std::vector<BlockListRow>> blocklists;  // one table per seed
  CategoryCounts counts;
  ModeProbabilities probs;  // recomputed from the config, never copied
  std::vector<WorkerModeProbability> worker_probs;  // per category
  double sigma_min_sq = 0;
  double frob_sq = 0;
  double x0_error_sq = 0;
  std::vector<std::pair<long long, double>> bound_curve;  // update index -> bound
};

/// Keep every iteration up to 1000, then every 10th, and always the last one.
bool keep_curve_point(long long iteration, long long total);

RunReport run_experiment(const ExperimentConfig& config);

/// Write convergence.csv, probabilities.csv, per-seed blocklist CSVs and
/// summary.json under config.out_dir, prefixed with the config name.
void emit_report(const RunReport& report);

/// Analytic tables only (the tableN presets): probabilities.csv + summary.json.
void emit_probs(const ProbsInstance& instance, const std::string& out_dir);

std::string rational_to_string(const BigRat& r);

}  // namespace drk
