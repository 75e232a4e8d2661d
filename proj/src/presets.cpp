#include "drk/presets.hpp"

#include <cmath>

#include "drk/errors.hpp"

namespace drk {

CategoryCounts equalized_counts(int N, double p, int k, int n) {
  long long adversarial = std::llround(N * p);
  CategoryCounts cc;
  cc.n = n;
  cc.counts.push_back(N - adversarial);
  if (k > 0 && adversarial > 0) {
    long long base = adversarial / k;
    long long rem = adversarial % k;
    for (int l = 0; l < k; ++l) cc.counts.push_back(base + (l < rem ? 1 : 0));
  }
  cc.validate();
  return cc;
}

namespace {

ExperimentConfig paper_run(const std::string& name, double p, int k, int n, bool blocklist) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.problem = {.rows = 1000, .cols = 100, .noise = 0.0, .seed = 1};
  cfg.pool.workers = 100;
  cfg.pool.adversary_rate = p;
  cfg.pool.categories = k;
  cfg.pool.error_model = ErrorKind::Constant;
  cfg.pool.offset_scale = 0.5;
  cfg.solve.n = n;
  cfg.solve.p_threshold = p;
  cfg.solve.max_iter = 50000;
  cfg.solve.blocklist_enabled = blocklist;
  cfg.solve.policy = {BlockPolicyKind::FractionThreshold, 0.5, 0, 0};
  cfg.solve.period = 100;
  cfg.seeds = {1, 2, 3};
  return cfg;
}

std::string pct(double p) { return std::to_string(static_cast<int>(std::lround(p * 100))); }

Preset make_fig1() {
  Preset ps{.name = "fig1",
            .description = "chosen-worker sweep: k=10, p in {0.2,0.8}, n=30..70, "
                           "with and without the block list"};
  for (double p : {0.2, 0.8})
    for (int n : {30, 40, 50, 60, 70})
      for (bool bl : {false, true})
        ps.runs.push_back(paper_run(
            "fig1_p" + pct(p) + "_n" + std::to_string(n) + (bl ? "_bl" : "_nobl"), p, 10, n, bl));
  return ps;
}

Preset make_fig2() {
  Preset ps{.name = "fig2",
            .description = "adversary-rate sweep: k=10, n=10, p in {0.2,0.4,0.6,0.8}"};
  for (double p : {0.2, 0.4, 0.6, 0.8})
    for (bool bl : {false, true})
      ps.runs.push_back(paper_run("fig2_p" + pct(p) + (bl ? "_bl" : "_nobl"), p, 10, 10, bl));
  return ps;
}

Preset make_fig3() {
  Preset ps{.name = "fig3",
            .description = "error-category sweep: p=0.8, n=10, k in {2,5,10} plus "
                           "the fresh-random (k -> infinity) limit"};
  for (int k : {2, 5, 10})
    for (bool bl : {false, true})
      ps.runs.push_back(
          paper_run("fig3_k" + std::to_string(k) + (bl ? "_bl" : "_nobl"), 0.8, k, 10, bl));
  for (bool bl : {false, true}) {
    ExperimentConfig cfg = paper_run(std::string("fig3_random") + (bl ? "_bl" : "_nobl"),
                                     0.8, 10, 10, bl);
    cfg.pool.error_model = ErrorKind::FreshRandom;
    cfg.pool.magnitude = 1.0;
    ps.runs.push_back(cfg);
  }
  return ps;
}

Preset make_fig4() {
  Preset ps{.name = "fig4",
            .description = "inconsistent systems: noise uniform(1e-4), p=0.8, k=10, n=30..70"};
  for (int n : {30, 40, 50, 60, 70})
    for (bool bl : {false, true}) {
      ExperimentConfig cfg =
          paper_run("fig4_n" + std::to_string(n) + (bl ? "_bl" : "_nobl"), 0.8, 10, n, bl);
      cfg.problem.noise = 1e-4;
      // threshold an eighth below the adversary rate so category-sized groups
      // stay expressible while partial categories cannot re-qualify
      cfg.solve.p_threshold = 0.84;
      ps.runs.push_back(cfg);
    }
  return ps;
}

Preset make_table2() {
  Preset ps{.name = "table2",
            .description = "exact mode probabilities, N=100, n=5, k sweep at p in {0.8,0.2}"};
  for (double p : {0.8, 0.2})
    for (int k : (p == 0.8 ? std::vector<int>{5, 10, 15} : std::vector<int>{3, 5, 10, 15}))
      ps.probs.push_back(
          {"table2_p" + pct(p) + "_k" + std::to_string(k), equalized_counts(100, p, k, 5)});
  return ps;
}

Preset make_table3() {
  Preset ps{.name = "table3",
            .description = "exact mode probabilities, N=100, k=5, n in {10,15,20}"};
  for (double p : {0.8, 0.2})
    for (int n : {10, 15, 20})
      ps.probs.push_back(
          {"table3_p" + pct(p) + "_n" + std::to_string(n), equalized_counts(100, p, 5, n)});
  return ps;
}

Preset make_table4() {
  Preset ps{.name = "table4",
            .description = "block-list precision/recall: p=0.8, k=10, n=30..70"};
  for (int n : {30, 40, 50, 60, 70}) {
    ExperimentConfig cfg = paper_run("table4_n" + std::to_string(n), 0.8, 10, n, true);
    cfg.solve.p_threshold = 0.84;
    cfg.solve.max_iter = 2000;
    cfg.solve.min_active = 20;  // let the block list learn every adversary
    cfg.seeds = {1};
    ps.runs.push_back(cfg);
  }
  return ps;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog = {
      make_fig1(), make_fig2(), make_fig3(), make_fig4(),
      make_table2(), make_table3(), make_table4(),
  };
  return catalog;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace drk
