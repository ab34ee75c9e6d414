#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nbbl1 {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

#ifdef NDEBUG
inline constexpr bool kDebugBuild = false;
#else
inline constexpr bool kDebugBuild = true;
#endif

// Errors ---------------------------------------------------------------------

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when f or a gradient component is NaN/Inf. `index()` is the
/// offending gradient component, or nullopt when the value itself is bad.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::optional<std::size_t> index)
      : std::runtime_error(what), index_(index) {}
  std::optional<std::size_t> index() const { return index_; }

 private:
  std::optional<std::size_t> index_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Smooth part ----------------------------------------------------------------

/// Smooth term f of F = f + mu * R. Implementations are immutable after
/// construction and must be deterministic; gradients are analytic.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;

  virtual std::size_t dimension() const = 0;

  /// Returns f(x) and writes grad f(x) into `grad` (resized as needed).
  virtual double value_and_gradient(const Vector& x, Vector& grad) const = 0;

  /// f(x) alone. The default evaluates the gradient into scratch storage.
  virtual double value(const Vector& x) const {
    Vector scratch;
    return value_and_gradient(x, scratch);
  }
};

using SmoothObjectivePtr = std::shared_ptr<const SmoothObjective>;

// Regularizer ----------------------------------------------------------------

enum class RegularizerKind { L1, L2Norm, Nuclear };

std::string_view to_string(RegularizerKind kind);

struct RegularizerSpec {
  RegularizerKind kind = RegularizerKind::L1;
  double mu = 0.0;
  // Matrix shape for Nuclear; the iterate is reshaped column-major.
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Trailing coordinates left out of R (used for an unpenalized intercept).
  // Only meaningful for L1 and L2Norm.
  std::size_t free_tail = 0;

  static RegularizerSpec l1(double mu);
  static RegularizerSpec l2(double mu);
  static RegularizerSpec nuclear(std::size_t rows, std::size_t cols, double mu);

  /// Throws ArgumentError / DimensionError if inconsistent with dimension n.
  void validate(std::size_t n) const;
};

/// Unweighted norm R(x): ||x||_1, ||x||_2 or the nuclear norm of reshape(x).
double regularizer_norm(const RegularizerSpec& spec, const Vector& x);

/// mu * R(x).
double regularizer_value(const RegularizerSpec& spec, const Vector& x);

// Composite problem ----------------------------------------------------------

struct CompositeProblem {
  SmoothObjectivePtr smooth;
  RegularizerSpec reg;

  std::size_t dimension() const { return smooth->dimension(); }
};

struct Evaluation {
  double f = 0.0;
  Vector grad;
  double F = 0.0;
};

/// Evaluates f, grad f and F = f + mu R at x. Throws EvaluationError on any
/// non-finite output.
Evaluation evaluate(const CompositeProblem& problem, const Vector& x);

// Solver configuration and trace --------------------------------------------

enum class BBVariant { BB1, BB2 };

std::string_view to_string(BBVariant variant);

struct SolverConfig {
  double h = 1.0;
  double rho = 0.35;
  double delta = 1e-4;
  std::size_t m_tilde = 5;
  double lambda_min = 1e-20;
  double lambda_max = 1e20;
  double tol_d = 1e-8;
  double tol_x = 0.0;
  std::size_t max_iter = 10000;
  std::size_t max_backtracks = 100;
  BBVariant bb_variant = BBVariant::BB1;
  double lambda0 = 1.0;
  // Throw InvariantViolation when a descent certificate fails.
  bool verify_descent = kDebugBuild;

  void validate() const;
};

enum class TerminationReason {
  DirectionSmall,
  RelativeChangeSmall,
  MaxIterations,
  LineSearchFailure
};

std::string_view to_string(TerminationReason reason);

/// True for the two convergence reasons.
bool converged(TerminationReason reason);

/// One row per iteration. Row k describes x_k, the direction taken from it
/// and the step accepted (alpha = 0 on the terminal row).
struct IterationRecord {
  std::size_t k = 0;
  double F = 0.0;
  double norm_d = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  std::size_t backtracks = 0;
  std::size_t nf = 0;
  double elapsed = 0.0;
  std::optional<double> rel_err;

  // Diagnostics kept in memory only.
  double delta = 0.0;       // model decrease Delta_k
  double delta_error = 0.0; // rounding bound on delta
  double window_max = 0.0;  // line-search reference after accepting x_{k+1}
  double norm_grad = 0.0;   // ||grad f(x_k)||_2
};

}  // namespace nbbl1
