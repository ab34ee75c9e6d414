#include "nbbl1/core_model.hpp"

#include "nbbl1/prox_ops.hpp"

#include <cmath>
#include <sstream>

namespace nbbl1 {

std::string_view to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::L1: return "l1";
    case RegularizerKind::L2Norm: return "l2";
    case RegularizerKind::Nuclear: return "nuclear";
  }
  return "?";
}

std::string_view to_string(BBVariant variant) {
  return variant == BBVariant::BB1 ? "bb1" : "bb2";
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::DirectionSmall: return "DirectionSmall";
    case TerminationReason::RelativeChangeSmall: return "RelativeChangeSmall";
    case TerminationReason::MaxIterations: return "MaxIterations";
    case TerminationReason::LineSearchFailure: return "LineSearchFailure";
  }
  return "?";
}

bool converged(TerminationReason reason) {
  return reason == TerminationReason::DirectionSmall ||
         reason == TerminationReason::RelativeChangeSmall;
}

RegularizerSpec RegularizerSpec::l1(double mu) {
  return RegularizerSpec{RegularizerKind::L1, mu, 0, 0, 0};
}

RegularizerSpec RegularizerSpec::l2(double mu) {
  return RegularizerSpec{RegularizerKind::L2Norm, mu, 0, 0, 0};
}

RegularizerSpec RegularizerSpec::nuclear(std::size_t rows, std::size_t cols,
                                         double mu) {
  return RegularizerSpec{RegularizerKind::Nuclear, mu, rows, cols, 0};
}

void RegularizerSpec::validate(std::size_t n) const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ArgumentError("regularizer weight mu must be finite and >= 0");
  }
  if (kind == RegularizerKind::Nuclear) {
    if (rows * cols != n) {
      std::ostringstream os;
      os << "nuclear regularizer shape " << rows << "x" << cols
         << " does not match dimension " << n;
      throw DimensionError(os.str());
    }
    if (free_tail != 0) {
      throw ArgumentError("free_tail is not supported for the nuclear norm");
    }
  } else if (free_tail > n) {
    throw DimensionError("free_tail exceeds problem dimension");
  }
}

double regularizer_norm(const RegularizerSpec& spec, const Vector& x) {
  const auto n = static_cast<std::size_t>(x.size());
  spec.validate(n);
  const auto penalized = static_cast<Eigen::Index>(n - spec.free_tail);
  switch (spec.kind) {
    case RegularizerKind::L1:
      return x.head(penalized).lpNorm<1>();
    case RegularizerKind::L2Norm:
      return x.head(penalized).norm();
    case RegularizerKind::Nuclear: {
      const Eigen::Map<const Matrix> X(x.data(),
                                       static_cast<Eigen::Index>(spec.rows),
                                       static_cast<Eigen::Index>(spec.cols));
      return nuclear_norm(X);
    }
  }
  return 0.0;
}

double regularizer_value(const RegularizerSpec& spec, const Vector& x) {
  if (spec.mu == 0.0) {
    spec.validate(static_cast<std::size_t>(x.size()));
    return 0.0;
  }
  return spec.mu * regularizer_norm(spec, x);
}

Evaluation evaluate(const CompositeProblem& problem, const Vector& x) {
  const std::size_t n = problem.dimension();
  if (static_cast<std::size_t>(x.size()) != n) {
    std::ostringstream os;
    os << "point has dimension " << x.size() << ", problem expects " << n;
    throw DimensionError(os.str());
  }
  Evaluation out;
  out.f = problem.smooth->value_and_gradient(x, out.grad);
  if (!std::isfinite(out.f)) {
    throw EvaluationError("smooth objective value is not finite", std::nullopt);
  }
  if (static_cast<std::size_t>(out.grad.size()) != n) {
    throw DimensionError("gradient length differs from problem dimension");
  }
  for (Eigen::Index i = 0; i < out.grad.size(); ++i) {
    if (!std::isfinite(out.grad[i])) {
      std::ostringstream os;
      os << "gradient component " << i << " is not finite";
      throw EvaluationError(os.str(), static_cast<std::size_t>(i));
    }
  }
  out.F = out.f + regularizer_value(problem.reg, x);
  return out;
}

void SolverConfig::validate() const {
  auto fail = [](const char* msg) { throw ArgumentError(msg); };
  if (!(h > 0.0 && h <= 1.0)) fail("h must lie in (0, 1]");
  if (!(rho > 0.0 && rho < 1.0)) fail("rho must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
  if (!(lambda_min > 0.0 && lambda_min < lambda_max)) {
    fail("need 0 < lambda_min < lambda_max");
  }
  if (!std::isfinite(lambda_max)) fail("lambda_max must be finite");
  if (!(tol_d >= 0.0) || !(tol_x >= 0.0)) fail("tolerances must be >= 0");
  if (max_iter == 0) fail("max_iter must be positive");
  if (max_backtracks == 0) fail("max_backtracks must be positive");
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
    fail("lambda0 must be positive and finite");
  }
}

}  // namespace nbbl1
