#include "drk/solver.hpp"

#include <cmath>
#include <limits>

#include "drk/aggregate.hpp"
#include "drk/errors.hpp"

namespace drk {

bool residual_stopping_check(double last_applied_c, double tol) {
  return std::abs(last_applied_c) > tol;
}

namespace {

// Category shared by every member of the chosen group, or kOutcomeMixedGroup.
int resolve_category(const WorkerPool& pool, const ResponseGroup& group) {
  int cat = pool.category_of(group.members.front());
  for (int w : group.members)
    if (pool.category_of(w) != cat) return kOutcomeMixedGroup;
  return cat;
}

}  // namespace

SolveTrace run(const Problem& problem, const WorkerPool& pool, const SolveConfig& config) {
  if (config.n < 1) throw ConfigError("run: n must be positive");
  if (config.max_iter < 1) throw ConfigError("run: max_iter must be positive");
  if (config.tol < 0) throw ConfigError("run: negative tol");
  if (config.n > pool.total()) throw ConfigError("run: n exceeds the worker pool");
  const int min_active = config.min_active < 0 ? config.n : config.min_active;

  RowDistribution rows = row_sampling_distribution(problem.A);
  RngStream row_rng(config.seed, "rows");
  RngStream sample_rng(config.seed, "workers");
  RngStream tiebreak_rng(config.seed, "tiebreak");
  RngStream noise_base(config.seed, "noise");

  SolveTrace trace{.blocklist = BlockListState(pool.total(), config.period)};
  trace.records.reserve(static_cast<std::size_t>(config.max_iter));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(problem.cols());
  double last_applied_c = std::numeric_limits<double>::infinity();
  trace.status = "max_iter";

  for (long long j = 0; j < config.max_iter; ++j) {
    if (!residual_stopping_check(last_applied_c, config.tol)) {
      trace.status = "tol_reached";
      break;
    }
    if (static_cast<int>(trace.blocklist.active().size()) < config.n) {
      trace.status = "insufficient_workers";
      break;
    }

    IterationRecord rec;
    rec.iteration = j;
    rec.row = rows.sample(row_rng);
    rec.sampled = sample_workers(pool, trace.blocklist.active(), config.n, sample_rng);

    const auto a_i = problem.A.row(rec.row).transpose();
    const double b_i = problem.b[rec.row];
    std::vector<Response> responses;
    responses.reserve(rec.sampled.size());
    for (int w : rec.sampled) {
      RngStream wrng = noise_base.derive(static_cast<std::uint64_t>(j),
                                         static_cast<std::uint64_t>(w));
      responses.push_back(worker_compute(pool, w, rec.row, a_i, b_i, x, wrng));
    }

    auto groups = group_responses(responses, config.grouping_tol);
    ModeDecision decision = select_mode(groups, config.n, config.p_threshold, tiebreak_rng);

    if (decision.chosen) {
      const ResponseGroup& g = groups[decision.group_index];
      double c = g.representative;
      double honest_c = true_coefficient(x, a_i, b_i);
      x = kaczmarz_step(x, a_i, c);
      last_applied_c = c;
      ++trace.updates;
      rec.applied = true;
      rec.abs_coefficient = std::abs(c);
      rec.outcome_category = resolve_category(pool, g);
      rec.corrupted = std::abs(c - honest_c) > config.grouping_tol;
      if (rec.corrupted) ++trace.corrupted_updates;
    } else {
      ++trace.skips;
    }

    trace.blocklist.record_iteration(rec.sampled, decision, groups,
                                     config.count_skips_against_all);
    rec.error = error_norm(x, problem.x_star);
    if (config.record_iterates) trace.iterates.push_back(x);
    trace.records.push_back(std::move(rec));

    if (config.blocklist_enabled && (j + 1) % config.period == 0)
      trace.blocklist.apply_policy(config.policy, min_active);
  }

  trace.final_x = std::move(x);
  return trace;
}

}  // namespace drk
