#pragma once

#include "nbbl1/core_model.hpp"

#include <deque>
#include <functional>
#include <vector>

namespace nbbl1 {

struct DirectionResult {
  Vector d;
  double delta = 0.0;  // grad^T d + mu (R(x + h d) - R(x)) / h
  Vector prox_point;   // x + h d
  // Forward error bound of the computed delta: (n + 4) u (|grad|^T |d| +
  // mu (R(x) + R(x + h d)) / h) with u the unit roundoff.
  double delta_error = 0.0;
};

/// Search direction from the h-scaled shrinkage model around x:
///   x + h d = prox_{(mu h / lambda) R}(x - (h / lambda) grad).
/// With mu == 0 this is exactly d = -grad / lambda.
DirectionResult compute_direction(const Vector& x, const Vector& grad,
                                  double lambda, const RegularizerSpec& spec,
                                  double h);

/// Barzilai-Borwein curvature estimate from the secant pair (s, y), clamped
/// to [lambda_min, lambda_max]. Nonpositive curvature (or s == 0) gives
/// lambda_min, i.e. the longest trial step.
double bb_lambda(const Vector& s, const Vector& y, BBVariant variant,
                 double lambda_min, double lambda_max);

/// Sliding window of the last min(k, m_tilde) + 1 objective values.
class FValueWindow {
 public:
  explicit FValueWindow(std::size_t m_tilde) : capacity_(m_tilde + 1) {}

  void push(double F);
  /// Reference value for the nonmonotone test: max of stored values.
  double max() const;
  std::size_t size() const { return values_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return values_.empty(); }
  double latest() const { return values_.back(); }

 private:
  std::size_t capacity_;
  std::deque<double> values_;
};

double nonmonotone_reference(const FValueWindow& window);

struct LineSearchResult {
  bool accepted = false;
  double alpha = 0.0;
  Vector x_new;
  double f_new = 0.0;
  double F_new = 0.0;
  std::size_t backtracks = 0;   // j
  std::size_t evaluations = 0;  // fresh F evaluations (j + 1 on success)
};

/// Smallest j with F(x + h rho^j d) <= max(window) + delta h rho^j Delta.
/// Non-finite trial values are rejected like any failed test. Returns
/// accepted == false once j would exceed cfg.max_backtracks.
LineSearchResult line_search(const CompositeProblem& problem, const Vector& x,
                             const FValueWindow& window, const Vector& d,
                             double delta, const SolverConfig& cfg);

struct RunHooks {
  std::function<void(const IterationRecord&)> trace_sink;
  /// Optional error metric recorded as IterationRecord::rel_err.
  std::function<double(const Vector&)> error_metric;
};

struct RunResult {
  Vector x;
  TerminationReason reason = TerminationReason::MaxIterations;
  std::vector<IterationRecord> records;
  double f = 0.0;
  double F = 0.0;
  double norm_grad = 0.0;
  double norm_d = 0.0;
  std::size_t iterations = 0;
  std::size_t nf = 0;
  double elapsed = 0.0;
};

/// Nonmonotone Barzilai-Borwein shrinkage iteration for f + mu R.
RunResult run(const CompositeProblem& problem, const Vector& x0,
              const SolverConfig& cfg, const RunHooks& hooks = {});

}  // namespace nbbl1
