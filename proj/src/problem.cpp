#include "drk/problem.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "drk/errors.hpp"

namespace drk {

Eigen::Index RowDistribution::sample(RngStream& rng) const {
  double u = rng.uniform01();
  const double* begin = cumulative.data();
  const double* end = begin + cumulative.size();
  const double* it = std::upper_bound(begin, end, u);
  if (it == end) --it;
  return static_cast<Eigen::Index>(it - begin);
}

Problem generate_problem(Eigen::Index m, Eigen::Index d, double noise_magnitude,
                         std::uint64_t seed) {
  if (d < 1 || m < d)
    throw DimensionError("generate_problem: need m >= d >= 1, got m=" + std::to_string(m) +
                         " d=" + std::to_string(d));
  if (noise_magnitude < 0) throw ConfigError("generate_problem: negative noise magnitude");

  Problem p;
  p.A.resize(m, d);
  RngStream rows(seed, "problem_rows");
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) p.A(i, j) = rows.gaussian();
    double norm = p.A.row(i).norm();
    if (norm == 0.0) throw DataError("generate_problem: drew an all-zero row");
    p.A.row(i) /= norm;
  }

  RngStream xs(seed, "problem_xstar");
  p.x_star.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) p.x_star[j] = xs.gaussian();

  p.noise = Eigen::VectorXd::Zero(m);
  if (noise_magnitude > 0) {
    RngStream ns(seed, "problem_noise");
    for (Eigen::Index i = 0; i < m; ++i) p.noise[i] = ns.uniform(0.0, noise_magnitude);
  }

  p.b = p.A * p.x_star + p.noise;
  return p;
}

RowDistribution row_sampling_distribution(const MatrixRM& A) {
  Eigen::VectorXd sq = A.rowwise().squaredNorm();
  double total = sq.sum();
  if (total == 0.0) throw DataError("row_sampling_distribution: all-zero matrix");
  RowDistribution dist;
  dist.probabilities = sq / total;
  dist.cumulative.resize(sq.size());
  double acc = 0;
  for (Eigen::Index i = 0; i < sq.size(); ++i) {
    acc += dist.probabilities[i];
    dist.cumulative[i] = acc;
  }
  dist.cumulative[sq.size() - 1] = 1.0;
  return dist;
}

double true_coefficient(const Eigen::VectorXd& x, const Eigen::Ref<const Eigen::VectorXd>& a_i,
                        double b_i) {
  if (x.size() != a_i.size())
    throw DimensionError("true_coefficient: iterate/row dimension mismatch");
  double norm_sq = a_i.squaredNorm();
  if (norm_sq == 0.0) throw DataError("true_coefficient: zero row");
  return (b_i - a_i.dot(x)) / norm_sq;
}

Eigen::VectorXd kaczmarz_step(const Eigen::VectorXd& x,
                              const Eigen::Ref<const Eigen::VectorXd>& a_i, double c) {
  if (x.size() != a_i.size()) throw DimensionError("kaczmarz_step: dimension mismatch");
  return x + c * a_i;
}

double error_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star) {
  if (x.size() != x_star.size()) throw DimensionError("error_norm: dimension mismatch");
  return (x - x_star).norm();
}

void save_problem(const Problem& p, std::ostream& out) {
  out << p.rows() << ' ' << p.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) out << (j ? " " : "") << p.A(i, j);
    out << '\n';
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) out << (i ? " " : "") << p.b[i];
  out << '\n';
  for (Eigen::Index j = 0; j < p.cols(); ++j) out << (j ? " " : "") << p.x_star[j];
  out << '\n';
}

void save_problem(const Problem& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("save_problem: cannot open " + path);
  save_problem(p, f);
}

Problem load_problem(std::istream& in) {
  Eigen::Index m = 0, d = 0;
  if (!(in >> m >> d) || m < 1 || d < 1 || m < d)
    throw DataError("load_problem: bad header");
  Problem p;
  p.A.resize(m, d);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (!(in >> p.A(i, j))) throw DataError("load_problem: truncated matrix");
  p.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(in >> p.b[i])) throw DataError("load_problem: truncated rhs");
  p.x_star.resize(d);
  for (Eigen::Index j = 0; j < d; ++j)
    if (!(in >> p.x_star[j])) throw DataError("load_problem: truncated solution");
  p.noise = p.b - p.A * p.x_star;
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("load_problem: cannot open " + path);
  return load_problem(f);
}

}  // namespace drk
