#include "drk/workers.hpp"

#include <cmath>
#include <string>

#include "drk/errors.hpp"
#include "drk/problem.hpp"

namespace drk {

WorkerPool::WorkerPool(std::vector<CategorySpec> categories, std::vector<int> assignment)
    : categories_(std::move(categories)), assignment_(std::move(assignment)) {
  std::vector<int> tally(categories_.size(), 0);
  for (int c : assignment_) {
    if (c < 0 || c >= static_cast<int>(categories_.size()))
      throw ConfigError("WorkerPool: assignment references unknown category");
    ++tally[c];
  }
  for (std::size_t l = 0; l < categories_.size(); ++l)
    if (tally[l] != categories_[l].count)
      throw ConfigError("WorkerPool: assignment does not match category counts");
}

int WorkerPool::category_of(int worker) const {
  if (worker < 0 || worker >= total())
    throw ConfigError("WorkerPool: unknown worker id " + std::to_string(worker));
  return assignment_[worker];
}

int WorkerPool::adversary_count() const {
  int n = 0;
  for (int c : assignment_)
    if (c != 0) ++n;
  return n;
}

std::vector<int> WorkerPool::adversaries() const {
  std::vector<int> out;
  for (int w = 0; w < total(); ++w)
    if (assignment_[w] != 0) out.push_back(w);
  return out;
}

WorkerPool build_pool(int N, const std::vector<std::pair<double, ErrorSpec>>& fractions,
                      std::uint64_t seed) {
  if (N < 1) throw ConfigError("build_pool: need at least one worker");
  double p = 0;
  for (const auto& [frac, spec] : fractions) {
    if (frac < 0 || frac > 1)
      throw ConfigError("build_pool: category fraction out of [0,1]");
    if (spec.kind == ErrorKind::None)
      throw ConfigError("build_pool: adversarial category with error spec 'none'");
    p += frac;
  }
  if (p > 1.0 + 1e-12) throw ConfigError("build_pool: fractions sum beyond 1");

  std::vector<CategorySpec> cats;
  cats.push_back({0, 0, ErrorSpec::none()});
  long long adversarial = 0;
  for (std::size_t l = 0; l < fractions.size(); ++l) {
    long long c = std::llround(N * fractions[l].first);
    cats.push_back({static_cast<int>(l + 1), static_cast<int>(c), fractions[l].second});
    adversarial += c;
  }
  long long honest = std::llround(N * (1.0 - p));
  if (honest + adversarial != N)
    throw ConfigError("build_pool: rounded category counts sum to " +
                      std::to_string(honest + adversarial) + ", not N=" + std::to_string(N) +
                      "; supply realizable fractions");
  if (honest < 0) throw ConfigError("build_pool: negative honest count");
  cats[0].count = static_cast<int>(honest);

  std::vector<int> assignment;
  assignment.reserve(N);
  for (const auto& c : cats)
    for (int i = 0; i < c.count; ++i) assignment.push_back(c.index);

  RngStream rng(seed, "pool_assignment");
  for (int i = N - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(assignment[i], assignment[j]);
  }
  return WorkerPool(std::move(cats), std::move(assignment));
}

std::vector<int> sample_workers(const WorkerPool& pool, const std::vector<int>& active, int n,
                                RngStream& rng) {
  (void)pool;
  if (n < 0 || static_cast<std::size_t>(n) > active.size())
    throw ConfigError("sample_workers: requested " + std::to_string(n) + " of " +
                      std::to_string(active.size()) + " active workers");
  std::vector<int> scratch = active;
  std::vector<int> out;
  out.reserve(n);
  std::size_t limit = scratch.size();
  for (int i = 0; i < n; ++i) {
    std::size_t j = rng.below(limit);
    out.push_back(scratch[j]);
    scratch[j] = scratch[--limit];
  }
  return out;
}

Response worker_compute(const WorkerPool& pool, int worker, Eigen::Index row_index,
                        const Eigen::Ref<const Eigen::VectorXd>& a_i, double b_i,
                        const Eigen::VectorXd& x, RngStream& rng) {
  int cat = pool.category_of(worker);
  double value = true_coefficient(x, a_i, b_i);
  const ErrorSpec& err = pool.categories()[cat].error;
  switch (err.kind) {
    case ErrorKind::None:
      break;
    case ErrorKind::Constant:
      value += err.constant;
      break;
    case ErrorKind::PerRow:
      if (row_index < 0 || row_index >= err.per_row.size())
        throw DimensionError("worker_compute: per-row error vector shorter than row index");
      value += err.per_row[row_index];
      break;
    case ErrorKind::FreshRandom:
      value += rng.uniform(-err.magnitude, err.magnitude);
      break;
  }
  return {worker, value};
}

}  // namespace drk
