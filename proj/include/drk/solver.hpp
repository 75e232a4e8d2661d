#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drk/blocklist.hpp"
#include "drk/problem.hpp"
#include "drk/workers.hpp"

namespace drk {

struct SolveConfig {
  int n = 10;                    // workers per iteration
  double p_threshold = 0.5;      // mode threshold parameter in ceil(n*(1-p))
  long long max_iter = 1000;
  double tol = 0.0;              // stop when the last applied |c| <= tol
  double grouping_tol = 1e-9;
  bool blocklist_enabled = false;
  BlockPolicy policy;
  int period = 100;
  int min_active = -1;           // -1: default to n
  bool count_skips_against_all = false;
  std::uint64_t seed = 1;
  bool record_iterates = false;  // diagnostic; keeps every iterate in the trace
};

// outcome_category values for an iteration record
inline constexpr int kOutcomeSkipped = -1;
inline constexpr int kOutcomeMixedGroup = -2;

struct IterationRecord {
  long long iteration = 0;
  Eigen::Index row = 0;
  std::vector<int> sampled;
  int outcome_category = kOutcomeSkipped;  // >= 0: category shared by the chosen group
  bool applied = false;
  bool corrupted = false;      // applied with a coefficient differing from the honest one
  double abs_coefficient = 0;  // |c| of the applied update, 0 when skipped
  double error = 0;            // ||x - x_star|| after this iteration
};

struct SolveTrace {
  std::vector<IterationRecord> records;
  Eigen::VectorXd final_x;
  BlockListState blocklist;
  long long updates = 0;
  long long skips = 0;
  long long corrupted_updates = 0;
  std::string status;  // "max_iter", "tol_reached", or "insufficient_workers"
  std::vector<Eigen::VectorXd> iterates;  // filled only when record_iterates

  long long iterations() const { return static_cast<long long>(records.size()); }
};

/// One full run of the mode-aggregated distributed Kaczmarz loop.
/// Deterministic for a fixed (problem, pool, config). The rng is split into
/// independent named streams (rows, worker sampling, tie-breaking, adversary
/// noise), so toggling one feature does not perturb the others' draws.
SolveTrace run(const Problem& problem, const WorkerPool& pool, const SolveConfig& config);

/// true (continue) iff |last_applied_c| > tol.
bool residual_stopping_check(double last_applied_c, double tol);

}  // namespace drk
