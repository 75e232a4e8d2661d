#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "drk/rng.hpp"

namespace drk {

/// How an adversarial category corrupts the coefficient it returns.
enum class ErrorKind {
  None,         // honest (category 0 only)
  Constant,     // fixed scalar offset, shared by the whole category
  PerRow,       // offset e[row] from a category-owned vector of length m
  FreshRandom,  // fresh uniform draw in [-magnitude, magnitude] per response
};

struct ErrorSpec {
  ErrorKind kind = ErrorKind::None;
  double constant = 0.0;
  Eigen::VectorXd per_row;
  double magnitude = 0.0;

  static ErrorSpec none() { return {}; }
  static ErrorSpec constant_offset(double c) {
    ErrorSpec s;
    s.kind = ErrorKind::Constant;
    s.constant = c;
    return s;
  }
  static ErrorSpec per_row_offset(Eigen::VectorXd e) {
    ErrorSpec s;
    s.kind = ErrorKind::PerRow;
    s.per_row = std::move(e);
    return s;
  }
  static ErrorSpec fresh_random(double magnitude) {
    ErrorSpec s;
    s.kind = ErrorKind::FreshRandom;
    s.magnitude = magnitude;
    return s;
  }
};

struct CategorySpec {
  int index = 0;  // 0 = honest
  int count = 0;
  ErrorSpec error;
};

/// Immutable worker population: ids 0..N-1, each assigned to exactly one
/// category by a seeded shuffle of the category multiset.
class WorkerPool {
 public:
  WorkerPool(std::vector<CategorySpec> categories, std::vector<int> assignment);

  int total() const { return static_cast<int>(assignment_.size()); }
  int category_of(int worker) const;
  const std::vector<CategorySpec>& categories() const { return categories_; }
  const std::vector<int>& assignment() const { return assignment_; }
  int adversary_count() const;
  std::vector<int> adversaries() const;  // ids with category != 0

 private:
  std::vector<CategorySpec> categories_;
  std::vector<int> assignment_;  // worker id -> category index
};

/// fractions holds (p_l, error spec) for the adversarial categories 1..k.
/// Counts are N*p_l rounded to nearest; the honest count is rounded from
/// N*(1-p); the configuration is rejected if the rounded counts do not sum
/// to N, or any fraction is out of range.
WorkerPool build_pool(int N, const std::vector<std::pair<double, ErrorSpec>>& fractions,
                      std::uint64_t seed);

/// n distinct ids drawn uniformly from active (without replacement).
std::vector<int> sample_workers(const WorkerPool& pool, const std::vector<int>& active, int n,
                                RngStream& rng);

struct Response {
  int worker = -1;
  double value = 0.0;
};

/// Honest workers return the true coefficient; adversarial workers add their
/// category's offset for this row (or a fresh random draw from rng).
Response worker_compute(const WorkerPool& pool, int worker, Eigen::Index row_index,
                        const Eigen::Ref<const Eigen::VectorXd>& a_i, double b_i,
                        const Eigen::VectorXd& x, RngStream& rng);

}  // namespace drk
