#include "drk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "drk/errors.hpp"
#include "drk/rng.hpp"

namespace drk {

BigInt binomial(long long a, long long i) {
  if (i < 0) throw ConfigError("binomial: negative lower index");
  if (a < i) return 0;
  if (i == 0 || i == a) return 1;
  i = std::min(i, a - i);
  BigInt result = 1;
  for (long long t = 0; t < i; ++t) {
    result *= (a - t);
    result /= (t + 1);  // exact: product of t+1 consecutive integers
  }
  return result;
}

long long CategoryCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0LL);
}

void CategoryCounts::validate() const {
  if (counts.empty()) throw ConfigError("CategoryCounts: no categories");
  for (long long c : counts)
    if (c < 0) throw ConfigError("CategoryCounts: negative count");
  long long N = total();
  if (n < 1 || n > N)
    throw ConfigError("CategoryCounts: need 1 <= n <= N, got n=" + std::to_string(n) +
                      " N=" + std::to_string(N));
}

namespace {
long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }
}  // namespace

long long CategoryCounts::i0() const {
  long long N = total();
  // ceil(n/(k+1)) and ceil(n * N_0 / N) = ceil(n(1-p)), both exact
  return std::max(ceil_div(n, k() + 1), ceil_div(static_cast<long long>(n) * counts[0], N));
}

std::vector<BigInt> truncation_polynomial(long long N_r, long long i) {
  if (i < 1) throw ConfigError("truncation_polynomial: need i >= 1");
  std::vector<BigInt> coeffs(static_cast<std::size_t>(i));
  for (long long j = 0; j < i; ++j) coeffs[static_cast<std::size_t>(j)] = binomial(N_r, j);
  return coeffs;
}

namespace {

// Convolution truncated at degree cap.
std::vector<BigInt> polymul_capped(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                   std::size_t cap) {
  std::vector<BigInt> out(std::min(a.size() + b.size() - 1, cap + 1));
  for (std::size_t ia = 0; ia < a.size() && ia <= cap; ++ia) {
    if (a[ia] == 0) continue;
    for (std::size_t ib = 0; ib < b.size() && ia + ib <= cap; ++ib) {
      if (b[ib] == 0) continue;
      out[ia + ib] += a[ia] * b[ib];
    }
  }
  return out;
}

}  // namespace

BigInt coefficient_a(long long i, int ell, const CategoryCounts& cc) {
  cc.validate();
  if (ell < 0 || ell > cc.k()) throw ConfigError("coefficient_a: invalid category index");
  const std::size_t cap = static_cast<std::size_t>(cc.n - i);
  std::vector<BigInt> prod{BigInt(1)};
  for (int r = 0; r <= cc.k(); ++r) {
    if (r == ell) continue;
    prod = polymul_capped(prod, truncation_polynomial(cc.counts[r], i), cap);
  }
  return cap < prod.size() ? prod[cap] : BigInt(0);
}

BigRat mode_category_probability(const CategoryCounts& cc, int ell) {
  cc.validate();
  if (ell < 0 || ell > cc.k())
    throw ConfigError("mode_category_probability: invalid category index");
  BigInt numer = 0;
  for (long long i = cc.i0(); i <= cc.n; ++i)
    numer += binomial(cc.counts[ell], i) * coefficient_a(i, ell, cc);
  return BigRat(numer, binomial(cc.total(), cc.n));
}

BigRat mode_exists_probability(const CategoryCounts& cc) {
  BigRat q = 0;
  for (int ell = 0; ell <= cc.k(); ++ell) q += mode_category_probability(cc, ell);
  return q;
}

ModeProbabilities mode_probabilities(const CategoryCounts& cc) {
  ModeProbabilities mp;
  mp.i0 = cc.i0();
  for (int ell = 0; ell <= cc.k(); ++ell)
    mp.per_category.push_back(mode_category_probability(cc, ell));
  mp.q = std::accumulate(mp.per_category.begin(), mp.per_category.end(), BigRat(0));
  for (const BigRat& v : mp.per_category)
    mp.q_conditional.push_back(mp.q == 0 ? BigRat(0) : BigRat(v / mp.q));
  return mp;
}

WorkerModeProbability worker_mode_probability(const CategoryCounts& cc, int ell) {
  cc.validate();
  if (ell < 0 || ell > cc.k())
    throw ConfigError("worker_mode_probability: invalid category index");
  if (cc.counts[ell] < 1) throw ConfigError("worker_mode_probability: empty category");
  long long N = cc.total();
  WorkerModeProbability w;
  w.p_sampled = BigRat(binomial(N - 1, cc.n - 1), binomial(N, cc.n));  // = n/N
  BigInt numer = 0;
  for (long long i = cc.i0(); i <= cc.n; ++i)
    numer += binomial(cc.counts[ell] - 1, i - 1) * coefficient_a(i, ell, cc);
  w.p_mode_given_sampled = BigRat(numer, binomial(N - 1, cc.n - 1));
  w.p_joint = w.p_sampled * w.p_mode_given_sampled;
  return w;
}

namespace {
double pow_rat(const BigRat& base, long long e) {
  double b = static_cast<double>(base);
  return std::pow(b, static_cast<double>(e));
}
}  // namespace

double non_mode_count_pmf(long long S, long long s, const BigRat& p_joint, long long N) {
  if (s < 0 || s > S) throw ConfigError("non_mode_count_pmf: need 0 <= s <= S");
  BigRat miss = 1 - p_joint;
  BigRat stay = 1 - BigRat(1, N) + p_joint;
  return static_cast<double>(binomial(S, s)) * pow_rat(miss, s) * pow_rat(stay, S - s);
}

double non_mode_count_pmf_normalized(long long S, long long s,
                                     const WorkerModeProbability& wmp) {
  if (s < 0 || s > S) throw ConfigError("non_mode_count_pmf: need 0 <= s <= S");
  BigRat miss = wmp.p_sampled - wmp.p_joint;  // sampled but not in the mode
  BigRat stay = 1 - miss;
  return static_cast<double>(binomial(S, s)) * pow_rat(miss, s) * pow_rat(stay, S - s);
}

double ConvergenceBoundInputs::alpha() const {
  if (frob_sq <= 0) throw ConfigError("ConvergenceBoundInputs: frob_sq must be positive");
  double a = 1.0 - sigma_min_sq / frob_sq;
  if (a >= 1.0)
    throw DataError("convergence_bound: alpha >= 1 (rank-deficient or zero sigma_min)");
  return a;
}

double convergence_bound(const ConvergenceBoundInputs& inp, long long iteration) {
  double a = inp.alpha();
  double decay = std::pow(a, static_cast<double>(iteration + 1));
  double err_term = 0;
  for (std::size_t l = 0; l < inp.error_norms_sq.size(); ++l) {
    double ql = l + 1 < inp.q_conditional.size() ? inp.q_conditional[l + 1] : 0.0;
    err_term += ql * inp.error_norms_sq[l];
  }
  if (err_term == 0) return decay * inp.x0_error_sq;
  return decay * inp.x0_error_sq + (1.0 - decay) / (1.0 - a) * err_term / inp.frob_sq;
}

double convergence_bound_uniform(const ConvergenceBoundInputs& inp, double C,
                                 long long iteration) {
  double a = inp.alpha();
  double decay = std::pow(a, static_cast<double>(iteration + 1));
  double q0 = inp.q_conditional.empty() ? 0.0 : inp.q_conditional[0];
  return decay * inp.x0_error_sq + (1.0 - decay) / (1.0 - a) * C * q0 / inp.frob_sq;
}

std::vector<BigRat> brute_force_mode_probability(const CategoryCounts& cc) {
  cc.validate();
  long long N = cc.total();
  BigInt subsets = binomial(N, cc.n);
  if (subsets > 1000000)
    throw ConfigError("brute_force_mode_probability: instance too large (binom(N,n) > 1e6)");
  long long i0 = cc.i0();

  std::vector<int> worker_cat;
  for (int l = 0; l <= cc.k(); ++l)
    for (long long c = 0; c < cc.counts[l]; ++c) worker_cat.push_back(l);

  std::vector<long long> tally(cc.counts.size(), 0);
  std::vector<int> idx(cc.n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<long long> cnt(cc.counts.size());
  for (;;) {
    std::fill(cnt.begin(), cnt.end(), 0);
    for (int i : idx) ++cnt[worker_cat[i]];
    long long mx = *std::max_element(cnt.begin(), cnt.end());
    if (mx >= i0) {
      int winner = -1;
      for (std::size_t l = 0; l < cnt.size(); ++l) {
        if (cnt[l] == mx) {
          winner = winner < 0 ? static_cast<int>(l) : -2;  // -2: tie at the max
          if (winner == -2) break;
        }
      }
      if (winner >= 0) ++tally[winner];
    }
    // next combination in lexicographic order
    int pos = cc.n - 1;
    while (pos >= 0 && idx[pos] == static_cast<int>(N) - cc.n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int t = pos + 1; t < cc.n; ++t) idx[t] = idx[t - 1] + 1;
  }

  std::vector<BigRat> out;
  for (long long t : tally) out.emplace_back(BigInt(t), subsets);
  return out;
}

McModeEstimate mc_mode_probability(const CategoryCounts& cc, long long trials,
                                   std::uint64_t seed) {
  cc.validate();
  if (trials < 1) throw ConfigError("mc_mode_probability: need at least one trial");
  long long N = cc.total();
  long long i0 = cc.i0();

  std::vector<int> base_cat;
  for (int l = 0; l <= cc.k(); ++l)
    for (long long c = 0; c < cc.counts[l]; ++c) base_cat.push_back(l);

  RngStream rng(seed, "mc_mode");
  std::vector<long long> hits(cc.counts.size(), 0);
  std::vector<int> pool = base_cat;
  std::vector<long long> cnt(cc.counts.size());
  for (long long t = 0; t < trials; ++t) {
    std::fill(cnt.begin(), cnt.end(), 0);
    std::size_t limit = pool.size();
    for (int i = 0; i < cc.n; ++i) {
      std::size_t j = rng.below(limit);
      ++cnt[pool[j]];
      std::swap(pool[j], pool[--limit]);
    }
    long long mx = *std::max_element(cnt.begin(), cnt.end());
    if (mx >= i0) {
      int winner = -1;
      for (std::size_t l = 0; l < cnt.size(); ++l) {
        if (cnt[l] == mx) {
          winner = winner < 0 ? static_cast<int>(l) : -2;
          if (winner == -2) break;
        }
      }
      if (winner >= 0) ++hits[winner];
    }
  }

  McModeEstimate est;
  est.trials = trials;
  for (long long h : hits) {
    double f = static_cast<double>(h) / static_cast<double>(trials);
    est.frequency.push_back(f);
    est.std_error.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(trials)));
  }
  return est;
}

}  // namespace drk
