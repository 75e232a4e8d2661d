#include "drk/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "drk/errors.hpp"

namespace drk {

int mode_size_threshold(int n, double p_threshold) {
  double v = n * (1.0 - p_threshold);
  // guard against 7.000000000000001-style representation noise
  int t = static_cast<int>(std::ceil(v - 1e-9));
  return std::max(t, 0);
}

std::vector<ResponseGroup> group_responses(const std::vector<Response>& responses, double tol) {
  if (responses.empty()) throw DataError("group_responses: no responses");
  if (tol < 0) throw ConfigError("group_responses: negative tolerance");
  for (const auto& r : responses)
    if (!std::isfinite(r.value)) throw DataError("group_responses: non-finite response value");

  std::vector<Response> sorted = responses;
  std::sort(sorted.begin(), sorted.end(), [](const Response& a, const Response& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.worker < b.worker;
  });

  std::vector<ResponseGroup> groups;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i].value - sorted[i - 1].value > tol) groups.emplace_back();
    groups.back().members.push_back(sorted[i].worker);
    groups.back().values.push_back(sorted[i].value);
  }
  for (auto& g : groups) {
    // values are sorted; median of an even count averages the middle pair
    std::size_t h = g.values.size() / 2;
    g.representative = (g.values.size() % 2) ? g.values[h]
                                             : 0.5 * (g.values[h - 1] + g.values[h]);
  }
  return groups;
}

ModeDecision select_mode(const std::vector<ResponseGroup>& groups, int n, double p_threshold,
                         RngStream& rng) {
  int total = 0;
  for (const auto& g : groups) total += g.size();
  if (total != n) throw DataError("select_mode: groups do not partition the n responses");

  ModeDecision d;
  d.threshold = mode_size_threshold(n, p_threshold);
  std::vector<int> qualifying;
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].size() >= d.threshold) qualifying.push_back(static_cast<int>(i));
  d.qualifying_count = static_cast<int>(qualifying.size());
  if (qualifying.empty()) return d;

  d.chosen = true;
  d.group_index = qualifying.size() == 1
                      ? qualifying.front()
                      : qualifying[rng.below(qualifying.size())];
  return d;
}

}  // namespace drk
