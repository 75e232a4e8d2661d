#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drk/solver.hpp"
#include "drk/workers.hpp"

namespace drk {

struct ProblemSpec {
  Eigen::Index rows = 1000;
  Eigen::Index cols = 100;
  double noise = 0.0;
  std::uint64_t seed = 1;
};

struct PoolSpec {
  int workers = 100;
  double adversary_rate = 0.0;
  int categories = 0;             // adversarial categories k
  std::vector<double> fractions;  // optional; default: equal p/k per category
  ErrorKind error_model = ErrorKind::Constant;
  std::vector<double> offsets;    // optional; default offset_scale * l
  double offset_scale = 0.5;
  double magnitude = 1.0;         // random error model half-width
  std::uint64_t seed = 1009;      // category assignment / per-row vectors
};

/// One experiment: a problem, a worker population, solver settings, and the
/// run seeds. The per-run solver seed comes from `seeds`, not solve.seed.
struct ExperimentConfig {
  std::string name = "run";
  ProblemSpec problem;
  PoolSpec pool;
  SolveConfig solve;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "out";
  bool full_trace = false;
};

/// Parse the flat key-value config format (sections in brackets, `key = value`
/// lines, `#` comments). Unknown keys, unrealizable fractions and other
/// violations raise ConfigError with the offending line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Per-category (fraction, error spec) pairs realized from a PoolSpec;
/// per-row error vectors are generated from the pool seed and need the
/// problem's row count m.
std::vector<std::pair<double, ErrorSpec>> category_error_fractions(const PoolSpec& pool,
                                                                   Eigen::Index m);

WorkerPool make_pool(const PoolSpec& pool, Eigen::Index m);

/// ||e_l||^2 for l = 1..k as used by the convergence bound: m*c^2 for a
/// constant offset c, the exact squared norm for a per-row vector, and the
/// expected value m*mag^2/3 for fresh uniform draws.
std::vector<double> category_error_norms_sq(const WorkerPool& pool, Eigen::Index m);

}  // namespace drk
