// drk: mode-aggregated distributed randomized Kaczmarz simulator and
// exact mode-probability calculator.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drk/errors.hpp"
#include "drk/experiment.hpp"
#include "drk/presets.hpp"
#include "drk/problem.hpp"

namespace {

drk::CategoryCounts parse_counts(const std::string& spec, int n) {
  drk::CategoryCounts cc;
  cc.n = n;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) cc.counts.push_back(std::stoll(item));
  cc.validate();
  return cc;
}

void print_probs(const drk::CategoryCounts& cc) {
  auto mp = drk::mode_probabilities(cc);
  std::printf("i0 = %lld\n", mp.i0);
  std::printf("%-9s %-6s %-26s %-14s %-14s\n", "category", "count", "q_mode_exact",
              "q_mode", "q_conditional");
  for (std::size_t l = 0; l < mp.per_category.size(); ++l)
    std::printf("%-9zu %-6lld %-26s %-14.8g %-14.8g\n", l, cc.counts[l],
                drk::rational_to_string(mp.per_category[l]).c_str(),
                static_cast<double>(mp.per_category[l]),
                static_cast<double>(mp.q_conditional[l]));
  std::printf("q = %s = %.8g\n", drk::rational_to_string(mp.q).c_str(),
              static_cast<double>(mp.q));
  for (int l = 0; l <= cc.k(); ++l) {
    if (cc.counts[l] < 1) continue;
    auto w = drk::worker_mode_probability(cc, l);
    std::printf("worker in category %d: P(sampled) = %.8g, P(mode|sampled) = %.8g, "
                "P(joint) = %.8g\n",
                l, static_cast<double>(w.p_sampled),
                static_cast<double>(w.p_mode_given_sampled),
                static_cast<double>(w.p_joint));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adversary-tolerant distributed randomized Kaczmarz simulator"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir, counts_spec;
  std::uint64_t seed = 1;
  int chosen = 5;
  long long trials = 100000, iters = 1000;
  bool full_trace = false;

  auto* solve = app.add_subcommand("solve", "run one experiment config");
  solve->add_option("--config", config_path, "config file")->required();
  auto* solve_seed = solve->add_option("--seed", seed, "override the run seed list");
  solve->add_option("--out", out_dir, "output directory override");
  solve->add_flag("--full-trace", full_trace, "emit every iteration of the error curve");

  auto* probs = app.add_subcommand("probs", "exact mode probabilities for given counts");
  probs->add_option("--counts", counts_spec, "comma-separated counts, honest first")
      ->required();
  probs->add_option("--chosen", chosen, "workers drawn per iteration")->required();
  probs->add_option("--out", out_dir, "also write CSV/JSON under this directory");

  auto* bound = app.add_subcommand("bound", "convergence bound curve for a config");
  bound->add_option("--config", config_path, "config file")->required();
  bound->add_option("--iters", iters, "number of update steps to evaluate");

  auto* mc = app.add_subcommand("mc", "Monte Carlo mode-probability estimates");
  mc->add_option("--counts", counts_spec, "comma-separated counts, honest first")->required();
  mc->add_option("--chosen", chosen, "workers drawn per iteration")->required();
  mc->add_option("--trials", trials, "number of trials");
  mc->add_option("--seed", seed, "rng seed");

  auto* experiment = app.add_subcommand("experiment", "run a preset or config file");
  experiment->add_option("--config", config_path, "config file");
  experiment->add_option("--preset", preset_name, "preset name (see `drk presets`)");
  experiment->add_option("--out", out_dir, "output directory override");
  experiment->add_flag("--full-trace", full_trace, "emit every iteration of the error curve");

  auto* presets = app.add_subcommand("presets", "list available presets");

  try {
    app.parse(argc, argv);

    if (solve->parsed()) {
      drk::ExperimentConfig cfg = drk::parse_config_file(config_path);
      if (!solve_seed->empty()) cfg.seeds = {seed};
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      cfg.full_trace = cfg.full_trace || full_trace;
      drk::RunReport report = drk::run_experiment(cfg);
      drk::emit_report(report);
      for (const auto& r : report.per_seed)
        std::printf("seed %llu: final_error = %.6e after %lld iterations "
                    "(%lld updates, %lld skips, %s)\n",
                    static_cast<unsigned long long>(r.seed), r.final_error, r.iterations,
                    r.updates, r.skips, r.status.c_str());
      std::printf("outputs under %s/%s_*\n", cfg.out_dir.c_str(), cfg.name.c_str());
    } else if (probs->parsed()) {
      drk::CategoryCounts cc = parse_counts(counts_spec, chosen);
      print_probs(cc);
      if (!out_dir.empty()) drk::emit_probs({"probs", cc}, out_dir);
    } else if (bound->parsed()) {
      drk::ExperimentConfig cfg = drk::parse_config_file(config_path);
      drk::RunReport report;  // reuse the experiment plumbing pieces
      drk::Problem problem = drk::generate_problem(cfg.problem.rows, cfg.problem.cols,
                                                   cfg.problem.noise, cfg.problem.seed);
      drk::WorkerPool pool = drk::make_pool(cfg.pool, problem.rows());
      drk::CategoryCounts cc;
      cc.n = cfg.solve.n;
      for (const auto& cat : pool.categories()) cc.counts.push_back(cat.count);
      auto mp = drk::mode_probabilities(cc);
      Eigen::BDCSVD<Eigen::MatrixXd> svd(problem.A);
      double smin = svd.singularValues()(svd.singularValues().size() - 1);
      drk::ConvergenceBoundInputs inp;
      inp.sigma_min_sq = smin * smin;
      inp.frob_sq = problem.A.squaredNorm();
      inp.x0_error_sq = problem.x_star.squaredNorm();
      inp.error_norms_sq = drk::category_error_norms_sq(pool, problem.rows());
      for (const auto& ql : mp.q_conditional)
        inp.q_conditional.push_back(static_cast<double>(ql));
      std::printf("update,bound\n");
      for (long long u = 0; u < iters; ++u)
        if (drk::keep_curve_point(u, iters))
          std::printf("%lld,%.17g\n", u, drk::convergence_bound(inp, u));
    } else if (mc->parsed()) {
      drk::CategoryCounts cc = parse_counts(counts_spec, chosen);
      auto est = drk::mc_mode_probability(cc, trials, seed);
      std::printf("%-9s %-12s %-12s\n", "category", "frequency", "std_error");
      for (std::size_t l = 0; l < est.frequency.size(); ++l)
        std::printf("%-9zu %-12.8g %-12.8g\n", l, est.frequency[l], est.std_error[l]);
    } else if (experiment->parsed()) {
      if (config_path.empty() == preset_name.empty())
        throw drk::ConfigError("experiment: give exactly one of --config or --preset");
      std::vector<drk::ExperimentConfig> runs;
      std::vector<drk::ProbsInstance> prob_instances;
      std::string dir = out_dir.empty() ? "out" : out_dir;
      if (!config_path.empty()) {
        runs.push_back(drk::parse_config_file(config_path));
        if (out_dir.empty()) dir = runs.front().out_dir;
      } else {
        const drk::Preset* ps = drk::find_preset(preset_name);
        if (!ps) throw drk::ConfigError("unknown preset '" + preset_name + "'");
        runs = ps->runs;
        prob_instances = ps->probs;
      }
      for (auto& cfg : runs) {
        cfg.out_dir = dir;
        cfg.full_trace = cfg.full_trace || full_trace;
        drk::RunReport report = drk::run_experiment(cfg);
        drk::emit_report(report);
        double med = 0;
        {
          std::vector<double> finals;
          for (const auto& r : report.per_seed) finals.push_back(r.final_error);
          std::sort(finals.begin(), finals.end());
          med = finals[finals.size() / 2];
        }
        std::printf("%-22s median final error %.6e  precision %.3f recall %.3f\n",
                    cfg.name.c_str(), med, report.per_seed.back().precision,
                    report.per_seed.back().recall);
      }
      for (const auto& inst : prob_instances) {
        drk::emit_probs(inst, dir);
        auto mp = drk::mode_probabilities(inst.cc);
        std::printf("%-22s q = %.6g  q0 = %.6g\n", inst.label.c_str(),
                    static_cast<double>(mp.q), static_cast<double>(mp.q_conditional[0]));
      }
      std::printf("outputs under %s/\n", dir.c_str());
    } else if (presets->parsed()) {
      for (const auto& p : drk::preset_catalog())
        std::printf("%-8s %s (%zu runs, %zu tables)\n", p.name.c_str(),
                    p.description.c_str(), p.runs.size(), p.probs.size());
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const drk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
