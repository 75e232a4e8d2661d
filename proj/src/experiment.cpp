#include "drk/experiment.hpp"

#include <Eigen/SVD>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "drk/errors.hpp"
#include "drk/problem.hpp"

namespace drk {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

bool keep_curve_point(long long iteration, long long total) {
  return iteration < 1000 || iteration % 10 == 0 || iteration == total - 1;
}

std::string rational_to_string(const BigRat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CategoryCounts counts_from_pool(const WorkerPool& pool, int n) {
  CategoryCounts cc;
  cc.n = n;
  for (const auto& cat : pool.categories()) cc.counts.push_back(cat.count);
  return cc;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config) {
  RunReport report;
  report.config = config;

  Problem problem = generate_problem(config.problem.rows, config.problem.cols,
                                     config.problem.noise, config.problem.seed);
  WorkerPool pool = make_pool(config.pool, problem.rows());
  std::vector<int> adversaries = pool.adversaries();

  report.counts = counts_from_pool(pool, config.solve.n);
  report.probs = mode_probabilities(report.counts);
  for (int l = 0; l <= report.counts.k(); ++l) {
    if (report.counts.counts[l] >= 1)
      report.worker_probs.push_back(worker_mode_probability(report.counts, l));
    else
      report.worker_probs.push_back({});
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(problem.A);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  report.sigma_min_sq = smin * smin;
  report.frob_sq = problem.A.squaredNorm();
  report.x0_error_sq = problem.x_star.squaredNorm();  // x0 = 0

  long long max_updates = 0;
  for (std::uint64_t seed : config.seeds) {
    SolveConfig sc = config.solve;
    sc.seed = seed;
    SolveTrace trace = run(problem, pool, sc);

    SeedResult res;
    res.seed = seed;
    res.final_error = trace.records.empty() ? error_norm(trace.final_x, problem.x_star)
                                            : trace.records.back().error;
    res.iterations = trace.iterations();
    res.updates = trace.updates;
    res.skips = trace.skips;
    res.corrupted_updates = trace.corrupted_updates;
    res.status = trace.status;
    auto blocked = trace.blocklist.blocked_ids();
    res.blocked = static_cast<int>(blocked.size());
    auto [prec, rec] = precision_recall(blocked, adversaries);
    res.precision = prec;
    res.recall = rec;
    report.per_seed.push_back(res);
    max_updates = std::max(max_updates, trace.updates);

    for (const auto& r : trace.records)
      if (config.full_trace || keep_curve_point(r.iteration, trace.iterations()))
        report.curve.push_back({r.iteration, seed, r.error, !r.applied});

    std::vector<BlockListRow> rows;
    for (int w = 0; w < pool.total(); ++w)
      rows.push_back({w, pool.category_of(w), trace.blocklist.counter()[w],
                      trace.blocklist.participation()[w], trace.blocklist.is_blocked(w)});
    report.blocklists.push_back(std::move(rows));
  }

  ConvergenceBoundInputs inp;
  inp.sigma_min_sq = report.sigma_min_sq;
  inp.frob_sq = report.frob_sq;
  inp.x0_error_sq = report.x0_error_sq;
  inp.error_norms_sq = category_error_norms_sq(pool, problem.rows());
  for (const auto& ql : report.probs.q_conditional)
    inp.q_conditional.push_back(static_cast<double>(ql));
  for (long long u = 0; u < max_updates; ++u)
    if (keep_curve_point(u, max_updates))
      report.bound_curve.emplace_back(u, convergence_bound(inp, u));

  return report;
}

namespace {

json probs_to_json(const CategoryCounts& cc, const ModeProbabilities& mp) {
  json out;
  out["counts"] = cc.counts;
  out["chosen"] = cc.n;
  out["i0"] = mp.i0;
  json cats = json::array();
  for (std::size_t l = 0; l < mp.per_category.size(); ++l) {
    json c;
    c["category"] = l;
    c["count"] = cc.counts[l];
    c["q_mode_exact"] = rational_to_string(mp.per_category[l]);
    c["q_mode_decimal"] = static_cast<double>(mp.per_category[l]);
    c["q_conditional_decimal"] = static_cast<double>(mp.q_conditional[l]);
    cats.push_back(c);
  }
  out["per_category"] = cats;
  out["q_exact"] = rational_to_string(mp.q);
  out["q_decimal"] = static_cast<double>(mp.q);
  return out;
}

void write_probabilities_csv(const std::string& path, const CategoryCounts& cc,
                             const ModeProbabilities& mp) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  f << "category,count,q_mode_exact,q_mode_decimal\n";
  for (std::size_t l = 0; l < mp.per_category.size(); ++l)
    f << l << ',' << cc.counts[l] << ',' << rational_to_string(mp.per_category[l]) << ','
      << fmt(static_cast<double>(mp.per_category[l])) << '\n';
}

}  // namespace

void emit_report(const RunReport& report) {
  fs::create_directories(report.config.out_dir);
  const std::string base = report.config.out_dir + "/" + report.config.name;

  {
    std::ofstream f(base + "_convergence.csv");
    if (!f) throw DataError("cannot write " + base + "_convergence.csv");
    f << "iteration,seed,error_norm,skipped\n";
    for (const auto& p : report.curve)
      f << p.iteration << ',' << p.seed << ',' << fmt(p.error) << ',' << (p.skipped ? 1 : 0)
        << '\n';
  }

  write_probabilities_csv(base + "_probabilities.csv", report.counts, report.probs);

  for (std::size_t s = 0; s < report.blocklists.size(); ++s) {
    std::ofstream f(base + "_blocklist_s" + std::to_string(report.per_seed[s].seed) + ".csv");
    f << "worker,category,counter,participation,blocked\n";
    for (const auto& r : report.blocklists[s])
      f << r.worker << ',' << r.category << ',' << r.counter << ',' << r.participation << ','
        << (r.blocked ? 1 : 0) << '\n';
  }

  json j;
  j["name"] = report.config.name;
  j["problem"] = {{"rows", report.config.problem.rows},
                  {"cols", report.config.problem.cols},
                  {"noise", report.config.problem.noise},
                  {"seed", report.config.problem.seed}};
  j["pool"] = {{"workers", report.config.pool.workers},
               {"adversary_rate", report.config.pool.adversary_rate},
               {"categories", report.config.pool.categories},
               {"seed", report.config.pool.seed}};
  j["solve"] = {{"chosen", report.config.solve.n},
                {"p_threshold", report.config.solve.p_threshold},
                {"max_iter", report.config.solve.max_iter},
                {"tol", report.config.solve.tol},
                {"grouping_tol", report.config.solve.grouping_tol},
                {"blocklist", report.config.solve.blocklist_enabled},
                {"period", report.config.solve.period}};
  json seeds = json::array();
  for (const auto& r : report.per_seed) {
    seeds.push_back({{"seed", r.seed},
                     {"final_error", r.final_error},
                     {"iterations", r.iterations},
                     {"updates", r.updates},
                     {"skips", r.skips},
                     {"corrupted_updates", r.corrupted_updates},
                     {"status", r.status},
                     {"blocked", r.blocked},
                     {"precision", r.precision},
                     {"recall", r.recall}});
  }
  j["per_seed"] = seeds;
  j["analysis"] = probs_to_json(report.counts, report.probs);
  j["bound"] = {{"sigma_min_sq", report.sigma_min_sq},
                {"frob_sq", report.frob_sq},
                {"x0_error_sq", report.x0_error_sq}};
  json bc = json::array();
  for (const auto& [u, v] : report.bound_curve) bc.push_back({{"update", u}, {"value", v}});
  j["bound_curve"] = bc;

  std::ofstream f(base + "_summary.json");
  if (!f) throw DataError("cannot write " + base + "_summary.json");
  f << j.dump(2) << '\n';
}

void emit_probs(const ProbsInstance& instance, const std::string& out_dir) {
  fs::create_directories(out_dir);
  ModeProbabilities mp = mode_probabilities(instance.cc);
  const std::string base = out_dir + "/" + instance.label;
  write_probabilities_csv(base + "_probabilities.csv", instance.cc, mp);

  json j = probs_to_json(instance.cc, mp);
  json workers = json::array();
  for (int l = 0; l <= instance.cc.k(); ++l) {
    if (instance.cc.counts[l] < 1) continue;
    auto w = worker_mode_probability(instance.cc, l);
    workers.push_back({{"category", l},
                       {"p_sampled", rational_to_string(w.p_sampled)},
                       {"p_mode_given_sampled", rational_to_string(w.p_mode_given_sampled)},
                       {"p_joint", rational_to_string(w.p_joint)},
                       {"p_joint_decimal", static_cast<double>(w.p_joint)}});
  }
  j["per_worker"] = workers;
  std::ofstream f(base + "_summary.json");
  if (!f) throw DataError("cannot write " + base + "_summary.json");
  f << j.dump(2) << '\n';
}

}  // namespace drk
