#include "nbbl1/objectives.hpp"

#include <cmath>
#include <sstream>

namespace nbbl1 {

namespace {

// log(1 + exp(-t)) without overflow.
double log1p_exp_neg(double t) {
  return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

// 1 / (1 + exp(t)), i.e. the derivative magnitude of log1p_exp_neg.
double logistic_tail(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

DenseOperator::DenseOperator(Matrix M) : M_(std::move(M)) {
  if (!M_.allFinite()) {
    throw ArgumentError("dense operator has non-finite entries");
  }
}

void DenseOperator::apply(const Vector& x, Vector& out) const {
  if (x.size() != M_.cols()) throw DimensionError("operator input size");
  out.noalias() = M_ * x;
}

void DenseOperator::apply_adjoint(const Vector& y, Vector& out) const {
  if (y.size() != M_.rows()) throw DimensionError("adjoint input size");
  out.noalias() = M_.transpose() * y;
}

LinearOperatorPtr dense_operator(Matrix M) {
  return std::make_shared<DenseOperator>(std::move(M));
}

LeastSquares::LeastSquares(LinearOperatorPtr A, Vector b)
    : A_(std::move(A)), b_(std::move(b)) {
  if (!A_) throw ArgumentError("least squares needs an operator");
  if (static_cast<std::size_t>(b_.size()) != A_->rows()) {
    std::ostringstream os;
    os << "observation length " << b_.size() << " differs from operator rows "
       << A_->rows();
    throw DimensionError(os.str());
  }
}

double LeastSquares::value_and_gradient(const Vector& x, Vector& grad) const {
  Vector r;
  A_->apply(x, r);
  r -= b_;
  A_->apply_adjoint(r, grad);
  return 0.5 * r.squaredNorm();
}

double LeastSquares::value(const Vector& x) const {
  Vector r;
  A_->apply(x, r);
  r -= b_;
  return 0.5 * r.squaredNorm();
}

SmoothObjectivePtr least_squares(LinearOperatorPtr A, Vector b) {
  return std::make_shared<LeastSquares>(std::move(A), std::move(b));
}

LogisticLoss::LogisticLoss(Matrix A, Vector labels, bool with_intercept)
    : A_(std::move(A)), y_(std::move(labels)), with_intercept_(with_intercept) {
  if (y_.size() != A_.rows()) {
    throw DimensionError("label count differs from number of samples");
  }
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    if (y_[i] != 1.0 && y_[i] != -1.0) {
      std::ostringstream os;
      os << "label " << i << " is " << y_[i] << ", expected -1 or +1";
      throw ArgumentError(os.str());
    }
  }
}

std::size_t LogisticLoss::dimension() const {
  return static_cast<std::size_t>(A_.cols()) + (with_intercept_ ? 1 : 0);
}

Vector LogisticLoss::margins(const Vector& w) const {
  if (static_cast<std::size_t>(w.size()) != dimension()) {
    throw DimensionError("logistic loss: weight vector size");
  }
  Vector z = A_ * w.head(A_.cols());
  if (with_intercept_) z.array() += w[A_.cols()];
  return (z.array() * y_.array()).matrix();
}

double LogisticLoss::value(const Vector& w) const {
  const Vector t = margins(w);
  double f = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) f += log1p_exp_neg(t[i]);
  return f;
}

double LogisticLoss::value_and_gradient(const Vector& w, Vector& grad) const {
  const Vector t = margins(w);
  double f = 0.0;
  Vector coef(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    f += log1p_exp_neg(t[i]);
    coef[i] = -y_[i] * logistic_tail(t[i]);
  }
  grad.resize(static_cast<Eigen::Index>(dimension()));
  grad.head(A_.cols()).noalias() = A_.transpose() * coef;
  if (with_intercept_) grad[A_.cols()] = coef.sum();
  return f;
}

SmoothObjectivePtr logistic_loss(Matrix A, Vector labels, bool with_intercept) {
  return std::make_shared<LogisticLoss>(std::move(A), std::move(labels),
                                        with_intercept);
}

RegularizerSpec logistic_l1(const LogisticLoss& loss, double mu) {
  RegularizerSpec spec = RegularizerSpec::l1(mu);
  spec.free_tail = loss.with_intercept() ? 1 : 0;
  return spec;
}

}  // namespace nbbl1
