#include <doctest.h>

#include <cmath>
#include <sstream>

#include "drk/errors.hpp"
#include "drk/problem.hpp"
#include "drk/rng.hpp"

using namespace drk;

TEST_CASE("generate_problem: rows are unit-norm and b = A x* + noise") {
  Problem p = generate_problem(200, 20, 0.0, 9);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    CHECK(std::abs(p.A.row(i).norm() - 1.0) < 1e-12);
  CHECK((p.b - p.A * p.x_star).norm() == 0.0);  // exact by construction
  CHECK(p.noise.norm() == 0.0);

  Problem q = generate_problem(200, 20, 0.0, 9);
  CHECK(p.A == q.A);  // deterministic per seed
  CHECK(p.b == q.b);

  Problem r = generate_problem(200, 20, 0.0, 10);
  CHECK(p.A != r.A);
}

TEST_CASE("generate_problem: paper-scale instance and noise bound") {
  Problem p = generate_problem(1000, 100, 0.0, 1);
  CHECK(p.rows() == 1000);
  CHECK(p.cols() == 100);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    CHECK(std::abs(p.A.row(i).norm() - 1.0) < 1e-12);

  Problem noisy = generate_problem(10, 3, 1e-4, 7);
  double max_dev = (noisy.b - noisy.A * noisy.x_star).cwiseAbs().maxCoeff();
  CHECK(max_dev <= 1e-4);
  CHECK(max_dev > 0.0);
}

TEST_CASE("generate_problem rejects bad dimensions") {
  CHECK_THROWS_AS(generate_problem(3, 5, 0.0, 1), DimensionError);
  CHECK_THROWS_AS(generate_problem(0, 0, 0.0, 1), DimensionError);
}

TEST_CASE("row_sampling_distribution") {
  SUBCASE("identity rows are uniform") {
    MatrixRM A = MatrixRM::Identity(3, 3);
    auto dist = row_sampling_distribution(A);
    for (int i = 0; i < 3; ++i) CHECK(dist.probabilities[i] == doctest::Approx(1.0 / 3));
  }
  SUBCASE("row norms (1,2) give (1/5, 4/5)") {
    MatrixRM A(2, 2);
    A << 1, 0, 0, 2;
    auto dist = row_sampling_distribution(A);
    CHECK(dist.probabilities[0] == doctest::Approx(0.2));
    CHECK(dist.probabilities[1] == doctest::Approx(0.8));
  }
  SUBCASE("row-normalized matrix is uniform and sums to one") {
    Problem p = generate_problem(1000, 100, 0.0, 3);
    auto dist = row_sampling_distribution(p.A);
    CHECK(std::abs(dist.probabilities.sum() - 1.0) < 1e-12);
    for (Eigen::Index i = 0; i < 1000; ++i)
      CHECK(dist.probabilities[i] == doctest::Approx(1e-3).epsilon(1e-9));
  }
  SUBCASE("zero matrix is degenerate") {
    MatrixRM A = MatrixRM::Zero(2, 2);
    CHECK_THROWS_AS(row_sampling_distribution(A), DataError);
  }
  SUBCASE("permutation invariance") {
    Problem p = generate_problem(20, 5, 0.0, 4);
    auto d1 = row_sampling_distribution(p.A);
    MatrixRM B = p.A;
    B.row(0).swap(B.row(7));
    auto d2 = row_sampling_distribution(B);
    CHECK(d1.probabilities[0] == d2.probabilities[7]);
    CHECK(d1.probabilities[7] == d2.probabilities[0]);
  }
}

TEST_CASE("true_coefficient") {
  Eigen::VectorXd x(2), a(2);
  x << 0, 0;
  a << 1, 0;
  CHECK(true_coefficient(x, a, 1.0) == 1.0);

  // at the solution of a consistent system the residual vanishes
  Problem p = generate_problem(30, 4, 0.0, 2);
  for (Eigen::Index i = 0; i < 5; ++i)
    CHECK(std::abs(true_coefficient(p.x_star, p.A.row(i).transpose(), p.b[i])) < 1e-12);

  Eigen::VectorXd x2(2), a2(2);
  x2 << 1, 1;
  a2 << 0.6, 0.8;
  CHECK(true_coefficient(x2, a2, 0.0) == doctest::Approx(-1.4));

  Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(true_coefficient(x2, z, 1.0), DataError);
}

TEST_CASE("kaczmarz_step") {
  Eigen::VectorXd x(2), a(2);
  x << 0, 0;
  a << 1, 0;
  Eigen::VectorXd y = kaczmarz_step(x, a, 1.0);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 0.0);

  CHECK(kaczmarz_step(x, a, 0.0) == x);

  Eigen::VectorXd a2(2);
  a2 << 0.6, 0.8;
  Eigen::VectorXd y2 = kaczmarz_step(x, a2, 2.0);
  CHECK(y2[0] == doctest::Approx(1.2));
  CHECK(y2[1] == doctest::Approx(1.6));

  Eigen::VectorXd bad(3);
  CHECK_THROWS_AS(kaczmarz_step(x, bad, 1.0), DimensionError);
}

TEST_CASE("kaczmarz_step properties: orthogonality, projection, non-expansiveness") {
  Problem p = generate_problem(50, 8, 0.0, 5);
  RngStream rng(17, "test");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(8);
  for (int t = 0; t < 200; ++t) {
    Eigen::Index i = rng.below(50);
    auto a_i = p.A.row(i).transpose();
    double c = true_coefficient(x, a_i, p.b[i]);
    Eigen::VectorXd x2 = kaczmarz_step(x, a_i, c);

    // step direction parallel to the row (holds for any coefficient)
    Eigen::VectorXd diff = x2 - x;
    double cross = (diff - diff.dot(a_i) * a_i).norm();
    CHECK(cross < 1e-9);

    // projection: the row residual vanishes after a true-coefficient step
    CHECK(std::abs(p.b[i] - a_i.dot(x2)) < 1e-12);

    // non-expansiveness at the solution for consistent systems
    CHECK(error_norm(x2, p.x_star) <= error_norm(x, p.x_star) + 1e-12);
    x = x2;
  }
}

TEST_CASE("error_norm") {
  Eigen::VectorXd x(2), y(2);
  x << 3, 4;
  y << 0, 0;
  CHECK(error_norm(x, y) == doctest::Approx(5.0));
  CHECK(error_norm(x, x) == 0.0);

  // independent recomputation
  RngStream rng(23, "en");
  Eigen::VectorXd a(6), b(6);
  for (int i = 0; i < 6; ++i) {
    a[i] = rng.gaussian();
    b[i] = rng.gaussian();
  }
  double sq = 0;
  for (int i = 0; i < 6; ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  CHECK(error_norm(a, b) == doctest::Approx(std::sqrt(sq)));

  Eigen::VectorXd c(3);
  CHECK_THROWS_AS(error_norm(a, c), DimensionError);
}

TEST_CASE("problem save/load round trip") {
  Problem p = generate_problem(12, 4, 1e-4, 31);
  std::stringstream ss;
  save_problem(p, ss);
  Problem q = load_problem(ss);
  CHECK(q.rows() == p.rows());
  CHECK(q.cols() == p.cols());
  CHECK((q.A - p.A).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((q.b - p.b).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((q.x_star - p.x_star).cwiseAbs().maxCoeff() < 1e-15);
  // reconstructed noise matches the original up to parse precision
  CHECK((q.noise - p.noise).cwiseAbs().maxCoeff() < 1e-12);
}
