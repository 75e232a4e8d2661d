#pragma once

#include <utility>
#include <vector>

#include "drk/aggregate.hpp"

namespace drk {

enum class BlockPolicyKind { FractionThreshold, TopJ, AbsoluteCount };

struct BlockPolicy {
  BlockPolicyKind kind = BlockPolicyKind::FractionThreshold;
  double tau = 0.5;          // fraction policy: block when counter/participation > tau
  int top_j = 0;             // top-j policy: block the j largest counters
  long long abs_count = 0;   // absolute policy: block when counter > abs_count
};

/// Non-mode counters, participation counts, and the blocked/active partition.
/// Owned by a single solver loop; blocking is monotone over a run.
class BlockListState {
 public:
  BlockListState(int n_workers, int period);

  /// Bump participation for every sampled worker; when a group was chosen,
  /// bump the counter of each sampled worker outside it. A skipped iteration
  /// leaves counters unchanged unless count_skips_against_all is set.
  void record_iteration(const std::vector<int>& sampled, const ModeDecision& decision,
                        const std::vector<ResponseGroup>& groups,
                        bool count_skips_against_all = false);

  /// Convert counters into newly blocked workers, most suspicious first,
  /// never dropping below min_active active workers. Active = all \ blocked.
  void apply_policy(const BlockPolicy& policy, int min_active);

  int total() const { return static_cast<int>(counter_.size()); }
  int period() const { return period_; }
  bool is_blocked(int worker) const { return blocked_[worker]; }
  const std::vector<int>& active() const { return active_; }  // sorted ids
  std::vector<int> blocked_ids() const;
  const std::vector<long long>& counter() const { return counter_; }
  const std::vector<long long>& participation() const { return participation_; }

 private:
  std::vector<long long> counter_;
  std::vector<long long> participation_;
  std::vector<bool> blocked_;
  std::vector<int> active_;
  int period_;
};

/// (precision, recall) of a blocked set against the true adversary set.
/// An empty blocked set has precision 1; an empty adversary set has recall 1.
std::pair<double, double> precision_recall(const std::vector<int>& blocked,
                                           const std::vector<int>& true_adversaries);

}  // namespace drk
