#pragma once

#include <string>
#include <vector>

#include "drk/analysis.hpp"
#include "drk/config.hpp"

namespace drk {

/// A probability-table instance (no solver run).
struct ProbsInstance {
  std::string label;
  CategoryCounts cc;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> runs;   // solver experiments
  std::vector<ProbsInstance> probs;     // exact mode-probability tables
};

const std::vector<Preset>& preset_catalog();

/// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

/// Equal-as-possible integer category counts for k adversarial categories
/// holding a p fraction of N workers (largest-remainder rounding).
CategoryCounts equalized_counts(int N, double p, int k, int n);

}  // namespace drk
