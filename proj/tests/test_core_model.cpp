#include "nbbl1/core_model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nbbl1;

namespace {

class HalfSquaredNorm final : public SmoothObjective {
 public:
  explicit HalfSquaredNorm(std::size_t n) : n_(n) {}
  std::size_t dimension() const override { return n_; }
  double value_and_gradient(const Vector& x, Vector& grad) const override {
    grad = x;
    return 0.5 * x.squaredNorm();
  }

 private:
  std::size_t n_;
};

class NanAt final : public SmoothObjective {
 public:
  std::size_t dimension() const override { return 3; }
  double value_and_gradient(const Vector& x, Vector& grad) const override {
    grad = x;
    grad[1] = std::nan("");
    return 0.0;
  }
};

CompositeProblem half_norm(std::size_t n, RegularizerSpec reg) {
  return {std::make_shared<HalfSquaredNorm>(n), reg};
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("evaluate: zero point without regularization") {
  const auto ev = evaluate(half_norm(2, RegularizerSpec::l1(0.0)), vec({0, 0}));
  CHECK(ev.f == 0.0);
  CHECK(ev.grad.isZero(0.0));
  CHECK(ev.F == 0.0);
}

TEST_CASE("evaluate: half squared norm plus l1") {
  const auto ev = evaluate(half_norm(2, RegularizerSpec::l1(1.0)), vec({3, -4}));
  CHECK(ev.f == 12.5);
  CHECK(ev.grad == vec({3, -4}));
  CHECK(ev.F == 19.5);
}

TEST_CASE("evaluate: 1x1 nuclear norm is the absolute value") {
  const auto ev =
      evaluate(half_norm(1, RegularizerSpec::nuclear(1, 1, 2.0)), vec({-3}));
  CHECK(ev.F == doctest::Approx(4.5 + 6.0).epsilon(1e-15));
}

TEST_CASE("evaluate: dimension mismatch and non-finite gradients") {
  CHECK_THROWS_AS(evaluate(half_norm(2, RegularizerSpec::l1(1.0)), vec({1, 2, 3})),
                  DimensionError);
  try {
    evaluate({std::make_shared<NanAt>(), RegularizerSpec::l1(0.0)}, vec({1, 2, 3}));
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
}

TEST_CASE("regularizer_value examples") {
  CHECK(regularizer_value(RegularizerSpec::l1(0.25), vec({1, -1, 2})) == 1.0);
  CHECK(regularizer_value(RegularizerSpec::l2(2.0), vec({3, 4})) == 10.0);
  CHECK(regularizer_value(RegularizerSpec::nuclear(2, 2, 1.0), vec({3, 0, 0, 1})) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("regularizer spec validation") {
  CHECK_THROWS_AS(RegularizerSpec::nuclear(2, 3, 1.0).validate(5), DimensionError);
  CHECK_THROWS_AS(RegularizerSpec::l1(-1.0).validate(3), ArgumentError);
  CHECK_NOTHROW(RegularizerSpec::nuclear(2, 3, 1.0).validate(6));
}

TEST_CASE("regularizer is nonnegative and vanishes only at zero") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Vector x(6);
    for (auto& v : x) v = g(rng);
    for (const auto& spec : {RegularizerSpec::l1(0.7), RegularizerSpec::l2(0.7),
                             RegularizerSpec::nuclear(2, 3, 0.7)}) {
      CHECK(regularizer_value(spec, x) > 0.0);
      CHECK(regularizer_value(spec, Vector::Zero(6)) == 0.0);
    }
  }
}

TEST_CASE("l1 and l2 are invariant under sign flips; l2 under rotations") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int t = 0; t < 100; ++t) {
    Vector x(4);
    for (auto& v : x) v = g(rng);
    Vector flipped = x;
    flipped[t % 4] = -flipped[t % 4];
    flipped[(t + 1) % 4] = -flipped[(t + 1) % 4];
    CHECK(regularizer_value(RegularizerSpec::l1(1.3), flipped) ==
          regularizer_value(RegularizerSpec::l1(1.3), x));
    CHECK(regularizer_value(RegularizerSpec::l2(1.3), flipped) ==
          regularizer_value(RegularizerSpec::l2(1.3), x));

    const double a = angle(rng);
    Vector y = x;
    y[0] = std::cos(a) * x[0] - std::sin(a) * x[1];
    y[1] = std::sin(a) * x[0] + std::cos(a) * x[1];
    CHECK(regularizer_value(RegularizerSpec::l2(1.3), y) ==
          doctest::Approx(regularizer_value(RegularizerSpec::l2(1.3), x)).epsilon(1e-14));
  }
}

TEST_CASE("F equals f plus the regularizer exactly") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Vector x(4);
    for (auto& v : x) v = g(rng);
    const auto problem = half_norm(4, RegularizerSpec::nuclear(2, 2, 0.3));
    const auto ev = evaluate(problem, x);
    CHECK(ev.F == ev.f + regularizer_value(problem.reg, x));
    const auto again = evaluate(problem, x);
    CHECK(again.F == ev.F);
    CHECK(again.grad == ev.grad);
  }
}

TEST_CASE("free tail coordinates are not penalized") {
  RegularizerSpec spec = RegularizerSpec::l1(1.0);
  spec.free_tail = 1;
  CHECK(regularizer_value(spec, vec({1, -2, 100})) == 3.0);
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.h = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.h = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.rho = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.lambda_min = 2.0;
  cfg.lambda_max = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.lambda0 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("termination reasons") {
  CHECK(converged(TerminationReason::DirectionSmall));
  CHECK(converged(TerminationReason::RelativeChangeSmall));
  CHECK_FALSE(converged(TerminationReason::MaxIterations));
  CHECK_FALSE(converged(TerminationReason::LineSearchFailure));
  CHECK(to_string(TerminationReason::LineSearchFailure) == "LineSearchFailure");
}
