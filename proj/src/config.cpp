#include "drk/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drk/errors.hpp"

namespace drk {

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, int line) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    fail(line, "expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  fail(line, "expected on/off, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.solve.p_threshold = -1;  // sentinel: default to the pool's adversary rate
  cfg.solve.max_iter = 50000;

  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool saw_blocklist_key = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "problem" && section != "pool" && section != "solve" &&
          section != "run" && section != "output")
        fail(line, "unknown section [" + section + "]");
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line, "empty key or value");
    if (section.empty()) fail(line, "key '" + key + "' outside any section");

    if (section == "problem") {
      if (key == "rows") cfg.problem.rows = parse_int(value, line);
      else if (key == "cols") cfg.problem.cols = parse_int(value, line);
      else if (key == "noise") cfg.problem.noise = parse_double(value, line);
      else if (key == "seed") cfg.problem.seed = parse_int(value, line);
      else fail(line, "unknown key '" + key + "' in [problem]");
    } else if (section == "pool") {
      if (key == "workers") cfg.pool.workers = static_cast<int>(parse_int(value, line));
      else if (key == "adversary_rate") cfg.pool.adversary_rate = parse_double(value, line);
      else if (key == "categories") cfg.pool.categories = static_cast<int>(parse_int(value, line));
      else if (key == "fractions") {
        for (const auto& f : split_list(value))
          cfg.pool.fractions.push_back(parse_double(f, line));
      } else if (key == "error_model") {
        if (value == "constant") cfg.pool.error_model = ErrorKind::Constant;
        else if (value == "per_row") cfg.pool.error_model = ErrorKind::PerRow;
        else if (value == "random") cfg.pool.error_model = ErrorKind::FreshRandom;
        else fail(line, "error_model must be constant|per_row|random");
      } else if (key == "offsets") {
        for (const auto& f : split_list(value))
          cfg.pool.offsets.push_back(parse_double(f, line));
      } else if (key == "offset_scale") cfg.pool.offset_scale = parse_double(value, line);
      else if (key == "magnitude") cfg.pool.magnitude = parse_double(value, line);
      else if (key == "seed") cfg.pool.seed = parse_int(value, line);
      else fail(line, "unknown key '" + key + "' in [pool]");
    } else if (section == "solve") {
      if (key == "chosen") cfg.solve.n = static_cast<int>(parse_int(value, line));
      else if (key == "p_threshold") cfg.solve.p_threshold = parse_double(value, line);
      else if (key == "max_iter") cfg.solve.max_iter = parse_int(value, line);
      else if (key == "tol") cfg.solve.tol = parse_double(value, line);
      else if (key == "grouping_tol") cfg.solve.grouping_tol = parse_double(value, line);
      else if (key == "blocklist") { cfg.solve.blocklist_enabled = parse_bool(value, line); saw_blocklist_key = true; }
      else if (key == "policy") {
        if (value == "fraction") cfg.solve.policy.kind = BlockPolicyKind::FractionThreshold;
        else if (value == "top_j") cfg.solve.policy.kind = BlockPolicyKind::TopJ;
        else if (value == "absolute") cfg.solve.policy.kind = BlockPolicyKind::AbsoluteCount;
        else fail(line, "policy must be fraction|top_j|absolute");
      } else if (key == "tau") cfg.solve.policy.tau = parse_double(value, line);
      else if (key == "top_j") cfg.solve.policy.top_j = static_cast<int>(parse_int(value, line));
      else if (key == "abs_count") cfg.solve.policy.abs_count = parse_int(value, line);
      else if (key == "period") cfg.solve.period = static_cast<int>(parse_int(value, line));
      else if (key == "min_active") cfg.solve.min_active = static_cast<int>(parse_int(value, line));
      else if (key == "count_skips_against_all")
        cfg.solve.count_skips_against_all = parse_bool(value, line);
      else fail(line, "unknown key '" + key + "' in [solve]");
    } else if (section == "run") {
      if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& f : split_list(value))
          cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(f, line)));
      } else if (key == "name") cfg.name = value;
      else fail(line, "unknown key '" + key + "' in [run]");
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = value;
      else if (key == "full_trace") cfg.full_trace = parse_bool(value, line);
      else fail(line, "unknown key '" + key + "' in [output]");
    }
  }
  (void)saw_blocklist_key;

  // defaults that depend on other fields
  if (cfg.solve.p_threshold < 0) cfg.solve.p_threshold = cfg.pool.adversary_rate;

  // validation
  if (cfg.problem.rows < cfg.problem.cols || cfg.problem.cols < 1)
    throw ConfigError("problem: need rows >= cols >= 1");
  if (cfg.pool.workers < 1) throw ConfigError("pool: need at least one worker");
  if (cfg.pool.adversary_rate < 0 || cfg.pool.adversary_rate > 1)
    throw ConfigError("pool: adversary_rate outside [0,1]");
  if (cfg.pool.adversary_rate > 0 && cfg.pool.categories < 1)
    throw ConfigError("pool: adversary_rate > 0 requires categories >= 1");
  if (!cfg.pool.fractions.empty()) {
    if (static_cast<int>(cfg.pool.fractions.size()) != cfg.pool.categories)
      throw ConfigError("pool: fractions list length differs from categories");
    double sum = 0;
    for (double f : cfg.pool.fractions) sum += f;
    if (std::abs(sum - cfg.pool.adversary_rate) > 1e-9)
      throw ConfigError("pool: category fractions sum to " + std::to_string(sum) +
                        ", not adversary_rate");
  }
  if (!cfg.pool.offsets.empty() &&
      static_cast<int>(cfg.pool.offsets.size()) != cfg.pool.categories)
    throw ConfigError("pool: offsets list length differs from categories");
  if (cfg.solve.n > cfg.pool.workers)
    throw ConfigError("solve: chosen workers exceed the pool size");
  if (cfg.solve.p_threshold > 1)
    throw ConfigError("solve: p_threshold outside [0,1]");
  if (cfg.seeds.empty()) throw ConfigError("run: seeds must be non-empty");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  ExperimentConfig cfg = parse_config(ss.str());
  return cfg;
}

std::vector<std::pair<double, ErrorSpec>> category_error_fractions(const PoolSpec& pool,
                                                                   Eigen::Index m) {
  std::vector<std::pair<double, ErrorSpec>> out;
  int k = pool.categories;
  if (k == 0 || pool.adversary_rate == 0) return out;
  for (int l = 1; l <= k; ++l) {
    double frac = pool.fractions.empty() ? pool.adversary_rate / k : pool.fractions[l - 1];
    double offset = pool.offsets.empty() ? pool.offset_scale * l : pool.offsets[l - 1];
    ErrorSpec spec;
    switch (pool.error_model) {
      case ErrorKind::Constant:
        spec = ErrorSpec::constant_offset(offset);
        break;
      case ErrorKind::PerRow: {
        RngStream rng(pool.seed, "per_row_errors");
        RngStream row_rng = rng.derive(static_cast<std::uint64_t>(l));
        Eigen::VectorXd e(m);
        for (Eigen::Index i = 0; i < m; ++i) e[i] = row_rng.uniform(-offset, offset);
        spec = ErrorSpec::per_row_offset(std::move(e));
        break;
      }
      case ErrorKind::FreshRandom:
        spec = ErrorSpec::fresh_random(pool.magnitude);
        break;
      case ErrorKind::None:
        throw ConfigError("category_error_fractions: adversarial category cannot be 'none'");
    }
    out.emplace_back(frac, std::move(spec));
  }
  return out;
}

WorkerPool make_pool(const PoolSpec& pool, Eigen::Index m) {
  return build_pool(pool.workers, category_error_fractions(pool, m), pool.seed);
}

std::vector<double> category_error_norms_sq(const WorkerPool& pool, Eigen::Index m) {
  std::vector<double> out;
  for (const auto& cat : pool.categories()) {
    if (cat.index == 0) continue;
    switch (cat.error.kind) {
      case ErrorKind::Constant:
        out.push_back(static_cast<double>(m) * cat.error.constant * cat.error.constant);
        break;
      case ErrorKind::PerRow:
        out.push_back(cat.error.per_row.squaredNorm());
        break;
      case ErrorKind::FreshRandom:
        out.push_back(static_cast<double>(m) * cat.error.magnitude * cat.error.magnitude / 3.0);
        break;
      case ErrorKind::None:
        out.push_back(0);
        break;
    }
  }
  return out;
}

}  // namespace drk
