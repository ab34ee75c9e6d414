#include "nbbl1/objectives.hpp"
#include "nbbl1/solver.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nbbl1;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Matrix gaussian(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix M(m, n);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = g(rng);
  return M;
}

std::size_t small_dim(CuterName name) {
  return name == CuterName::WOODS ? 12 : 10;
}

}  // namespace

TEST_CASE("dense_operator examples") {
  const auto I = dense_operator(Matrix::Identity(3, 3));
  const Vector x = vec({1, -2, 3});
  CHECK(I->forward(x) == x);
  CHECK(I->adjoint(x) == x);

  Matrix row(1, 2);
  row << 1, 2;
  const auto R = dense_operator(row);
  CHECK(R->rows() == 1);
  CHECK(R->cols() == 2);
  CHECK(R->forward(vec({1, 1})) == vec({3}));
  CHECK(R->adjoint(vec({1})) == vec({1, 2}));
  CHECK_THROWS_AS(R->forward(vec({1, 1, 1})), DimensionError);
}

TEST_CASE("dense_operator adjoint consistency") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const auto A = dense_operator(gaussian(7, 11, rng));
    Vector x(11), y(7);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    const double lhs = A->forward(x).dot(y);
    const double rhs = x.dot(A->adjoint(y));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("least squares examples") {
  const auto id = least_squares(dense_operator(Matrix::Identity(2, 2)), vec({1, 2}));
  Vector grad;
  CHECK(id->value_and_gradient(vec({1, 2}), grad) == 0.0);
  CHECK(grad == vec({0, 0}));

  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 1;
  D(1, 1) = 2;
  const auto ls = least_squares(dense_operator(D), vec({0, 0}));
  CHECK(ls->value_and_gradient(vec({1, 1}), grad) == 2.5);
  CHECK(grad == vec({1, 4}));
  CHECK(ls->value(vec({1, 1})) == 2.5);
  CHECK_THROWS_AS(least_squares(dense_operator(D), vec({1, 2, 3})), DimensionError);
}

TEST_CASE("least squares value is half the squared residual") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  const Matrix M = gaussian(5, 8, rng);
  Vector b(5), x(8);
  for (auto& v : b) v = g(rng);
  for (auto& v : x) v = g(rng);
  const auto A = dense_operator(M);
  const auto ls = least_squares(A, b);
  const Vector r = A->forward(x) - b;
  CHECK(ls->value(x) == 0.5 * r.squaredNorm());
  for (int t = 0; t < 10; ++t) {
    for (auto& v : x) v = g(rng);
    CHECK(oracle::gradient_mismatch(*ls, x) <= 1e-5);
  }
}

TEST_CASE("logistic loss examples") {
  std::mt19937_64 rng(43);
  const Matrix A = gaussian(4, 3, rng);
  const Vector y = vec({1, -1, -1, 1});
  const auto plain = logistic_loss(A, y);
  CHECK(plain->dimension() == 3);
  CHECK(plain->value(Vector::Zero(3)) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
  const auto icpt = logistic_loss(A, y, true);
  CHECK(icpt->dimension() == 4);
  CHECK(icpt->value(Vector::Zero(4)) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(logistic_loss(A, vec({1, 0, 1, 1})), ArgumentError);
}

TEST_CASE("logistic loss vanishes as all margins grow") {
  Matrix A = Matrix::Identity(3, 3);
  const Vector y = vec({1, -1, 1});
  const auto loss = logistic_loss(A, y);
  const Vector w = vec({1, -1, 1});
  double prev = loss->value(w);
  for (double scale = 2.0; scale <= 50.0; scale += 2.0) {
    const double f = loss->value(scale * w);
    CHECK(f < prev);
    prev = f;
  }
  CHECK(loss->value(50.0 * w) < 1e-20);
  CHECK(std::isfinite(loss->value(-800.0 * w)));
}

TEST_CASE("logistic gradients match finite differences") {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> g;
  const Matrix A = gaussian(9, 5, rng);
  Vector y(9);
  for (auto& v : y) v = g(rng) > 0 ? 1.0 : -1.0;
  for (bool intercept : {false, true}) {
    const auto loss = logistic_loss(A, y, intercept);
    for (int t = 0; t < 10; ++t) {
      Vector w(static_cast<Eigen::Index>(loss->dimension()));
      for (auto& v : w) v = g(rng);
      CHECK(oracle::gradient_mismatch(*loss, w) <= 1e-5);
    }
  }
}

TEST_CASE("logistic_l1 leaves the intercept unpenalized") {
  const Matrix A = Matrix::Identity(2, 2);
  const LogisticLoss with(A, vec({1, -1}), true);
  const LogisticLoss without(A, vec({1, -1}), false);
  CHECK(logistic_l1(with, 0.5).free_tail == 1);
  CHECK(logistic_l1(without, 0.5).free_tail == 0);
  CHECK(regularizer_value(logistic_l1(with, 0.5), vec({1, -1, 9})) == 1.0);
}

TEST_CASE("CUTEr gradients match finite differences") {
  std::mt19937_64 rng(45);
  std::normal_distribution<double> g(0.0, 0.5);
  for (CuterName name : all_cuter_names()) {
    const auto tp = cuter_problem(name, small_dim(name));
    CAPTURE(tp.name);
    CHECK(oracle::gradient_mismatch(*tp.evaluator, tp.x0) <= 1e-5);
    for (int t = 0; t < 10; ++t) {
      Vector x = tp.x0;
      for (auto& v : x) v += g(rng);
      CHECK(oracle::gradient_mismatch(*tp.evaluator, x) <= 1e-5);
    }
  }
}

TEST_CASE("CUTEr values at known minimizers") {
  const auto at_ones = [](CuterName name, std::size_t n) {
    const auto tp = cuter_problem(name, n);
    Vector grad;
    const double f = tp.evaluator->value_and_gradient(Vector::Ones(static_cast<Eigen::Index>(n)), grad);
    CHECK(grad.norm() <= 1e-12);
    return f;
  };
  CHECK(at_ones(CuterName::VARDIM, 50) == 0.0);
  CHECK(at_ones(CuterName::WOODS, 40) == doctest::Approx(0.0));
  CHECK(at_ones(CuterName::GENROSE, 30) == 1.0);
  CHECK(at_ones(CuterName::CHAINWOO, 40) == 1.0);
}

TEST_CASE("COSINE reaches -(n-1)") {
  const auto tp = cuter_problem(CuterName::COSINE, 100);
  const auto r = run({tp.evaluator, RegularizerSpec::l1(0.0)}, tp.x0, SolverConfig{});
  CHECK(r.reason == TerminationReason::DirectionSmall);
  CHECK(r.F == doctest::Approx(-99.0).epsilon(1e-8));
}

TEST_CASE("CUTEr starting points and dimensions") {
  const auto woods = cuter_problem(CuterName::WOODS, 8);
  CHECK(woods.x0.head(4) == vec({-3, -1, -3, -1}));
  const auto chain = cuter_problem(CuterName::CHAINWOO, 6);
  CHECK(chain.x0.head(4) == vec({-3, -1, -3, -1}));
  CHECK(chain.x0[4] == -2.0);
  const auto vardim = cuter_problem(CuterName::VARDIM, 4);
  CHECK(vardim.x0 == vec({0.75, 0.5, 0.25, 0.0}));
  CHECK_THROWS_AS(cuter_problem(CuterName::WOODS, 6), DimensionError);
  CHECK_THROWS_AS(cuter_problem(CuterName::CHAINWOO, 3), DimensionError);
  CHECK_THROWS_AS(cuter_problem(CuterName::GENROSE, 0), DimensionError);
}

TEST_CASE("problem names parse case-insensitively") {
  CHECK(parse_cuter_name("genrose") == CuterName::GENROSE);
  CHECK(parse_cuter_name("ChaiWoo") == CuterName::CHAINWOO);
  CHECK_FALSE(parse_cuter_name("FLETCHER").has_value());
  CHECK(all_cuter_names().size() == 5);
}
