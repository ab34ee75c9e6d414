#include "nbbl1/solver.hpp"

#include "nbbl1/prox_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace nbbl1 {

namespace {

// R(p) - R(x). For l1 the difference is summed per coordinate so that it
// stays accurate when p is close to x.
double regularizer_change(const RegularizerSpec& spec, const Vector& p,
                          const Vector& x) {
  if (spec.kind == RegularizerKind::L1) {
    const auto penalized = x.size() - static_cast<Eigen::Index>(spec.free_tail);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < penalized; ++i) {
      acc += std::abs(p[i]) - std::abs(x[i]);
    }
    return acc;
  }
  return regularizer_norm(spec, p) - regularizer_norm(spec, x);
}

double rounding_scale(Eigen::Index n) {
  return static_cast<double>(n + 4) * std::numeric_limits<double>::epsilon() / 2.0;
}

}  // namespace

DirectionResult compute_direction(const Vector& x, const Vector& grad,
                                  double lambda, const RegularizerSpec& spec,
                                  double h) {
  if (x.size() != grad.size()) {
    throw DimensionError("compute_direction: x and grad differ in length");
  }
  if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
  if (!(h > 0.0 && h <= 1.0)) throw ArgumentError("h must lie in (0, 1]");

  DirectionResult out;
  if (spec.mu == 0.0) {
    spec.validate(static_cast<std::size_t>(x.size()));
    out.d = -grad / lambda;
    out.prox_point = x + h * out.d;
    out.delta = grad.dot(out.d);
    out.delta_error = rounding_scale(x.size()) * grad.cwiseAbs().dot(out.d.cwiseAbs());
    return out;
  }

  const Vector v = x - (h / lambda) * grad;
  const double tau = spec.mu * h / lambda;
  out.prox_point = shrink(spec, v, tau);
  out.d = -(x - out.prox_point) / h;
  out.delta =
      grad.dot(out.d) + spec.mu * regularizer_change(spec, out.prox_point, x) / h;
  out.delta_error =
      rounding_scale(x.size()) *
      (grad.cwiseAbs().dot(out.d.cwiseAbs()) +
       spec.mu * (regularizer_norm(spec, x) + regularizer_norm(spec, out.prox_point)) / h);
  return out;
}

double bb_lambda(const Vector& s, const Vector& y, BBVariant variant,
                 double lambda_min, double lambda_max) {
  if (s.size() != y.size()) {
    throw DimensionError("bb_lambda: s and y differ in length");
  }
  if (!(lambda_min > 0.0 && lambda_min < lambda_max)) {
    throw ArgumentError("bb_lambda: need 0 < lambda_min < lambda_max");
  }
  const double ss = s.squaredNorm();
  const double sy = s.dot(y);
  if (ss == 0.0 || !(sy > 0.0)) return lambda_min;
  const double raw = variant == BBVariant::BB1 ? sy / ss : y.squaredNorm() / sy;
  if (std::isnan(raw)) return lambda_min;
  return std::clamp(raw, lambda_min, lambda_max);
}

void FValueWindow::push(double F) {
  values_.push_back(F);
  while (values_.size() > capacity_) values_.pop_front();
}

double FValueWindow::max() const {
  if (values_.empty()) {
    throw ArgumentError("nonmonotone reference of an empty window");
  }
  return *std::max_element(values_.begin(), values_.end());
}

double nonmonotone_reference(const FValueWindow& window) { return window.max(); }

LineSearchResult line_search(const CompositeProblem& problem, const Vector& x,
                             const FValueWindow& window, const Vector& d,
                             double delta, const SolverConfig& cfg) {
  const double reference = window.max();
  LineSearchResult out;
  for (std::size_t j = 0; j <= cfg.max_backtracks; ++j) {
    const double alpha = cfg.h * std::pow(cfg.rho, static_cast<double>(j));
    Vector trial = x + alpha * d;
    const double f = problem.smooth->value(trial);
    const double F = f + regularizer_value(problem.reg, trial);
    ++out.evaluations;
    if (std::isfinite(F) && F <= reference + cfg.delta * alpha * delta) {
      out.accepted = true;
      out.alpha = alpha;
      out.x_new = std::move(trial);
      out.f_new = f;
      out.F_new = F;
      out.backtracks = j;
      return out;
    }
  }
  out.backtracks = cfg.max_backtracks;
  return out;
}

RunResult run(const CompositeProblem& problem, const Vector& x0,
              const SolverConfig& cfg, const RunHooks& hooks) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto seconds = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  cfg.validate();
  const std::size_t n = problem.dimension();
  problem.reg.validate(n);
  if (static_cast<std::size_t>(x0.size()) != n) {
    std::ostringstream os;
    os << "x0 has dimension " << x0.size() << ", problem expects " << n;
    throw DimensionError(os.str());
  }

  Evaluation ev;
  try {
    ev = evaluate(problem, x0);
  } catch (const EvaluationError& e) {
    throw EvaluationError(std::string("at starting point: ") + e.what(),
                          e.index());
  }

  RunResult result;
  Vector x = x0;
  Vector grad = std::move(ev.grad);
  double f = ev.f;
  double F = ev.F;
  double lambda = std::clamp(cfg.lambda0, cfg.lambda_min, cfg.lambda_max);
  std::size_t nf = 1;
  FValueWindow window(cfg.m_tilde);
  window.push(F);
  Vector x_prev;

  const auto emit = [&](IterationRecord& rec) {
    rec.elapsed = seconds();
    if (hooks.trace_sink) hooks.trace_sink(rec);
    result.records.push_back(rec);
  };

  // Stopping tests look at the previous direction: the step along d_k is
  // taken before ||d_k|| is compared with tol_d.
  double prev_norm_d = 0.0;
  for (std::size_t k = 0;; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.F = F;
    rec.lambda = lambda;
    rec.norm_grad = grad.norm();
    if (hooks.error_metric) rec.rel_err = hooks.error_metric(x);

    std::optional<TerminationReason> stop;
    if (k > 0) {
      if (prev_norm_d <= cfg.tol_d) {
        stop = TerminationReason::DirectionSmall;
      } else if (cfg.tol_x > 0.0) {
        const double prev_norm = x_prev.norm();
        if (prev_norm > 0.0 && (x - x_prev).norm() / prev_norm < cfg.tol_x) {
          stop = TerminationReason::RelativeChangeSmall;
        }
      }
    }
    if (!stop && k >= cfg.max_iter) stop = TerminationReason::MaxIterations;

    if (!stop) {
      const DirectionResult dir =
          compute_direction(x, grad, lambda, problem.reg, cfg.h);
      const double norm_d = dir.d.norm();
      rec.norm_d = norm_d;
      rec.delta = dir.delta;
      rec.delta_error = dir.delta_error;
      if (cfg.verify_descent && norm_d > 0.0 &&
          !(dir.delta <= -0.5 * lambda * norm_d * norm_d + dir.delta_error)) {
        std::ostringstream os;
        os << "descent certificate violated at k=" << k << ": Delta=" << dir.delta
           << " > -(lambda/2)||d||^2=" << -0.5 * lambda * norm_d * norm_d;
        throw InvariantViolation(os.str());
      }

      LineSearchResult ls = line_search(problem, x, window, dir.d, dir.delta, cfg);
      nf += ls.evaluations;
      rec.nf = nf;
      rec.backtracks = ls.backtracks;
      if (!ls.accepted) {
        stop = TerminationReason::LineSearchFailure;
        prev_norm_d = norm_d;
      } else {
        Vector grad_new;
        problem.smooth->value_and_gradient(ls.x_new, grad_new);
        for (Eigen::Index i = 0; i < grad_new.size(); ++i) {
          if (!std::isfinite(grad_new[i])) {
            std::ostringstream os;
            os << "gradient component " << i << " is not finite at iteration "
               << k + 1;
            throw EvaluationError(os.str(), static_cast<std::size_t>(i));
          }
        }
        const Vector s = ls.x_new - x;
        const Vector y = grad_new - grad;
        const double lambda_next =
            bb_lambda(s, y, cfg.bb_variant, cfg.lambda_min, cfg.lambda_max);

        window.push(ls.F_new);
        rec.alpha = ls.alpha;
        rec.window_max = window.max();
        emit(rec);

        x_prev = std::move(x);
        x = std::move(ls.x_new);
        grad = std::move(grad_new);
        f = ls.f_new;
        F = ls.F_new;
        lambda = lambda_next;
        prev_norm_d = norm_d;
        continue;
      }
    } else {
      // Terminal row reports the direction norm that was tested.
      rec.norm_d = prev_norm_d;
    }

    rec.nf = nf;
    rec.window_max = window.max();
    emit(rec);
    result.reason = *stop;
    result.norm_d = prev_norm_d;
    result.iterations = k;
    break;
  }

  result.x = std::move(x);
  result.f = f;
  result.F = F;
  result.norm_grad = grad.norm();
  result.nf = nf;
  result.elapsed = seconds();
  return result;
}

}  // namespace nbbl1
