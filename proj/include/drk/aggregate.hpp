#pragma once

#include <vector>

#include "drk/rng.hpp"
#include "drk/workers.hpp"

namespace drk {

/// A cluster of (near-)equal returned coefficients.
struct ResponseGroup {
  double representative = 0.0;  // median of member values
  std::vector<int> members;     // worker ids
  std::vector<double> values;   // parallel to members

  int size() const { return static_cast<int>(members.size()); }
};

struct ModeDecision {
  bool chosen = false;
  int group_index = -1;     // into the groups list when chosen
  int qualifying_count = 0; // groups meeting the size threshold
  int threshold = 0;        // ceil(n * (1 - p_threshold))
};

/// Smallest integer >= n*(1-p), robust to floating-point representation of p.
int mode_size_threshold(int n, double p_threshold);

/// Partition responses by sorting values and cutting where an adjacent gap
/// exceeds tol. Groups come back sorted by representative.
std::vector<ResponseGroup> group_responses(const std::vector<Response>& responses, double tol);

/// Uniformly choose one group among those with size >= ceil(n*(1-p_threshold));
/// skipped when none qualify.
ModeDecision select_mode(const std::vector<ResponseGroup>& groups, int n, double p_threshold,
                         RngStream& rng);

}  // namespace drk
