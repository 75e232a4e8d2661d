#include "drk/blocklist.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "drk/errors.hpp"

namespace drk {

BlockListState::BlockListState(int n_workers, int period)
    : counter_(n_workers, 0), participation_(n_workers, 0), blocked_(n_workers, false),
      period_(period) {
  if (n_workers < 1) throw ConfigError("BlockListState: need at least one worker");
  if (period < 1) throw ConfigError("BlockListState: period must be positive");
  active_.resize(n_workers);
  std::iota(active_.begin(), active_.end(), 0);
}

void BlockListState::record_iteration(const std::vector<int>& sampled,
                                      const ModeDecision& decision,
                                      const std::vector<ResponseGroup>& groups,
                                      bool count_skips_against_all) {
  for (int w : sampled) {
    if (blocked_[w])
      throw ConfigError("record_iteration: sampled worker " + std::to_string(w) +
                        " is already blocked");
    ++participation_[w];
  }
  if (decision.chosen) {
    const auto& members = groups[decision.group_index].members;
    std::set<int> in_mode(members.begin(), members.end());
    for (int w : sampled)
      if (!in_mode.count(w)) ++counter_[w];
  } else if (count_skips_against_all) {
    for (int w : sampled) ++counter_[w];
  }
}

void BlockListState::apply_policy(const BlockPolicy& policy, int min_active) {
  if (min_active > static_cast<int>(active_.size()))
    throw ConfigError("apply_policy: min_active exceeds the active set size");

  // (score, id) candidates, most suspicious first; zero counters never block
  std::vector<std::pair<double, int>> candidates;
  for (int w : active_) {
    if (counter_[w] <= 0) continue;
    switch (policy.kind) {
      case BlockPolicyKind::FractionThreshold: {
        double ratio = static_cast<double>(counter_[w]) /
                       static_cast<double>(std::max<long long>(participation_[w], 1));
        if (ratio > policy.tau) candidates.emplace_back(ratio, w);
        break;
      }
      case BlockPolicyKind::TopJ:
        candidates.emplace_back(static_cast<double>(counter_[w]), w);
        break;
      case BlockPolicyKind::AbsoluteCount:
        if (counter_[w] > policy.abs_count)
          candidates.emplace_back(static_cast<double>(counter_[w]), w);
        break;
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::size_t limit = candidates.size();
  if (policy.kind == BlockPolicyKind::TopJ)
    limit = std::min<std::size_t>(limit, std::max(policy.top_j, 0));
  long long room = static_cast<long long>(active_.size()) - min_active;
  limit = std::min<std::size_t>(limit, static_cast<std::size_t>(std::max<long long>(room, 0)));

  for (std::size_t i = 0; i < limit; ++i) blocked_[candidates[i].second] = true;

  active_.clear();
  for (int w = 0; w < total(); ++w)
    if (!blocked_[w]) active_.push_back(w);
}

std::vector<int> BlockListState::blocked_ids() const {
  std::vector<int> out;
  for (int w = 0; w < total(); ++w)
    if (blocked_[w]) out.push_back(w);
  return out;
}

std::pair<double, double> precision_recall(const std::vector<int>& blocked,
                                           const std::vector<int>& true_adversaries) {
  std::set<int> adv(true_adversaries.begin(), true_adversaries.end());
  long long hit = 0;
  for (int w : blocked)
    if (adv.count(w)) ++hit;
  double precision = blocked.empty() ? 1.0 : static_cast<double>(hit) / blocked.size();
  double recall = adv.empty() ? 1.0 : static_cast<double>(hit) / adv.size();
  return {precision, recall};
}

}  // namespace drk
