#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace drk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; 0 when a < i.
BigInt binomial(long long a, long long i);

/// Integer worker counts per category, category 0 honest, plus the number of
/// workers n drawn each iteration.
struct CategoryCounts {
  std::vector<long long> counts;  // N_0, N_1, ..., N_k
  int n = 1;

  long long total() const;
  int k() const { return static_cast<int>(counts.size()) - 1; }
  /// Minimal group size for a category to qualify as the mode:
  /// max(ceil(n/(k+1)), ceil(n(1-p))) with p = (N - N_0)/N, evaluated exactly.
  long long i0() const;
  void validate() const;
};

/// Coefficient list of q_i^r(x) = sum_{j=0}^{i-1} binom(N_r, j) x^j.
std::vector<BigInt> truncation_polynomial(long long N_r, long long i);

/// Coefficient of x^{n-i} in prod_{r != ell} q_i^r(x); counts the ways the
/// other categories contribute n-i workers with every category below i.
BigInt coefficient_a(long long i, int ell, const CategoryCounts& cc);

/// Probability that category ell is the mode (strict maximal count >= i0):
/// sum_{i=i0}^{n} binom(N_ell, i) a_{i,ell} / binom(N, n).
BigRat mode_category_probability(const CategoryCounts& cc, int ell);

/// q = sum over categories of mode_category_probability.
BigRat mode_exists_probability(const CategoryCounts& cc);

struct ModeProbabilities {
  std::vector<BigRat> per_category;   // qhat_mode^ell
  BigRat q;                           // mode-exists probability
  std::vector<BigRat> q_conditional;  // qhat_mode^ell / q (zero when q = 0)
  long long i0 = 0;
};

ModeProbabilities mode_probabilities(const CategoryCounts& cc);

struct WorkerModeProbability {
  BigRat p_sampled;             // P(w drawn) = n/N
  BigRat p_mode_given_sampled;  // P(w's category is the mode | w drawn)
  BigRat p_joint;               // product of the two
};

/// Per-worker mode probability for a fixed worker of category ell:
/// P(mode|w) = sum_{i=i0}^{n} binom(N_ell - 1, i-1) a_{i,ell} / binom(N-1, n-1).
WorkerModeProbability worker_mode_probability(const CategoryCounts& cc, int ell);

/// P(worker not mode for s of S iterations), evaluated as written:
/// binom(S,s) (1 - P_joint)^s (1 - 1/N + P_joint)^{S-s}. The two branch
/// probabilities sum to 2 - 1/N, so this is not a normalized pmf.
double non_mode_count_pmf(long long S, long long s, const BigRat& p_joint, long long N);

/// Normalized variant: per-iteration non-mode probability n/N - P_joint,
/// complement 1 - n/N + P_joint; sums to 1 over s.
double non_mode_count_pmf_normalized(long long S, long long s,
                                     const WorkerModeProbability& wmp);

struct ConvergenceBoundInputs {
  double sigma_min_sq = 0;             // smallest squared singular value of A
  double frob_sq = 0;                  // ||A||_F^2
  double x0_error_sq = 0;              // ||x_0 - x*||^2
  std::vector<double> error_norms_sq;  // ||e_ell||^2 for ell = 1..k
  std::vector<double> q_conditional;   // q_ell for ell = 0..k

  double alpha() const;  // 1 - sigma_min_sq / frob_sq; throws when >= 1
};

/// alpha^{i+1} ||x0-x*||^2 + (1-alpha^{i+1})/(1-alpha) (1/||A||_F^2)
///   sum_{ell>=1} q_ell ||e_ell||^2.
double convergence_bound(const ConvergenceBoundInputs& inp, long long iteration);

/// Uniform-error variant with C q_0 / ||A||_F^2 in place of the sum.
double convergence_bound_uniform(const ConvergenceBoundInputs& inp, double C,
                                 long long iteration);

/// Independent oracle: enumerate every n-subset of the N workers, tally the
/// categories whose count is a strict maximum >= i0. Exact rationals.
std::vector<BigRat> brute_force_mode_probability(const CategoryCounts& cc);

struct McModeEstimate {
  std::vector<double> frequency;  // per category
  std::vector<double> std_error;  // binomial standard error
  long long trials = 0;
};

/// Statistical oracle: repeated sampling without replacement.
McModeEstimate mc_mode_probability(const CategoryCounts& cc, long long trials,
                                   std::uint64_t seed);

}  // namespace drk
