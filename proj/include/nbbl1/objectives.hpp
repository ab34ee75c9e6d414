#pragma once

#include "nbbl1/core_model.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nbbl1 {

/// Abstract m x n linear map with its adjoint.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  /// out = A x
  virtual void apply(const Vector& x, Vector& out) const = 0;
  /// out = A^T y
  virtual void apply_adjoint(const Vector& y, Vector& out) const = 0;

  Vector forward(const Vector& x) const {
    Vector out;
    apply(x, out);
    return out;
  }
  Vector adjoint(const Vector& y) const {
    Vector out;
    apply_adjoint(y, out);
    return out;
  }
};

using LinearOperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Matrix M);

  std::size_t rows() const override { return static_cast<std::size_t>(M_.rows()); }
  std::size_t cols() const override { return static_cast<std::size_t>(M_.cols()); }
  void apply(const Vector& x, Vector& out) const override;
  void apply_adjoint(const Vector& y, Vector& out) const override;

  const Matrix& matrix() const { return M_; }

 private:
  Matrix M_;
};

LinearOperatorPtr dense_operator(Matrix M);

/// f(x) = 1/2 ||A x - b||^2, grad = A^T (A x - b).
class LeastSquares final : public SmoothObjective {
 public:
  LeastSquares(LinearOperatorPtr A, Vector b);

  std::size_t dimension() const override { return A_->cols(); }
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  double value(const Vector& x) const override;

  const LinearOperator& op() const { return *A_; }
  const Vector& rhs() const { return b_; }

 private:
  LinearOperatorPtr A_;
  Vector b_;
};

SmoothObjectivePtr least_squares(LinearOperatorPtr A, Vector b);

/// f(w) = sum_i log(1 + exp(-(a_i^T x + c) y_i)). With an intercept the
/// variable is [x; c] of length n + 1, otherwise c = 0 and length n.
class LogisticLoss final : public SmoothObjective {
 public:
  LogisticLoss(Matrix A, Vector labels, bool with_intercept);

  std::size_t dimension() const override;
  double value_and_gradient(const Vector& w, Vector& grad) const override;
  double value(const Vector& w) const override;

  bool with_intercept() const { return with_intercept_; }

 private:
  Vector margins(const Vector& w) const;

  Matrix A_;
  Vector y_;
  bool with_intercept_;
};

SmoothObjectivePtr logistic_loss(Matrix A, Vector labels,
                                 bool with_intercept = false);

/// L1 spec matching a logistic objective: the intercept (if any) is left
/// unpenalized.
RegularizerSpec logistic_l1(const LogisticLoss& loss, double mu);

// CUTEr-style test problems ---------------------------------------------------

enum class CuterName { VARDIM, COSINE, GENROSE, WOODS, CHAINWOO };

std::string_view to_string(CuterName name);
/// Case-insensitive; accepts CHAIWOO as an alias of CHAINWOO.
std::optional<CuterName> parse_cuter_name(std::string_view text);
const std::vector<CuterName>& all_cuter_names();

struct TestProblem {
  std::string name;
  std::size_t n = 0;
  Vector x0;
  SmoothObjectivePtr evaluator;
};

/// Standard formulation and starting point. Throws DimensionError for an
/// inadmissible n.
TestProblem cuter_problem(CuterName name, std::size_t n);

}  // namespace nbbl1
