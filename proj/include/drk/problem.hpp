#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "drk/rng.hpp"

namespace drk {

using MatrixRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense least-squares instance with known ground truth. Rows of A have unit
/// Euclidean norm; b = A x_star + noise holds exactly by construction.
struct Problem {
  MatrixRM A;
  Eigen::VectorXd b;
  Eigen::VectorXd x_star;
  Eigen::VectorXd noise;  // all-zero for a consistent system

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }
};

/// Row-sampling probabilities p_i = ||A_i||^2 / ||A||_F^2.
struct RowDistribution {
  Eigen::VectorXd probabilities;
  Eigen::VectorXd cumulative;

  Eigen::Index sample(RngStream& rng) const;
};

/// Gaussian rows normalized to unit norm, Gaussian x_star, one-sided uniform
/// noise in [0, noise_magnitude]. Deterministic per seed.
Problem generate_problem(Eigen::Index m, Eigen::Index d, double noise_magnitude,
                         std::uint64_t seed);

RowDistribution row_sampling_distribution(const MatrixRM& A);

/// Step coefficient an honest worker computes: (b_i - <A_i, x>) / ||A_i||^2.
double true_coefficient(const Eigen::VectorXd& x, const Eigen::Ref<const Eigen::VectorXd>& a_i,
                        double b_i);

/// x + c * A_i.
Eigen::VectorXd kaczmarz_step(const Eigen::VectorXd& x,
                              const Eigen::Ref<const Eigen::VectorXd>& a_i, double c);

/// Euclidean distance to the reference solution.
double error_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star);

/// Plain-text exchange format: "m d" header, then the rows of A, then b, then
/// x_star, one vector per line block, >= 15 significant digits.
void save_problem(const Problem& p, std::ostream& out);
void save_problem(const Problem& p, const std::string& path);
Problem load_problem(std::istream& in);
Problem load_problem(const std::string& path);

}  // namespace drk
