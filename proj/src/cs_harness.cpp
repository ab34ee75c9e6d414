#include "nbbl1/cs_harness.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <numeric>
#include <sstream>

namespace nbbl1 {

// Randomness ------------------------------------------------------------------

std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream) {
  std::uint64_t z = seed + static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

namespace {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates; only the first k slots are needed.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

std::string_view to_string(AmplitudeMode mode) {
  return mode == AmplitudeMode::PositiveUnit ? "positive-unit" : "gaussian";
}

std::string_view to_string(Encoder encoder) {
  return encoder == Encoder::Gaussian ? "gaussian" : "dct";
}

std::string_view to_string(StartMode mode) {
  return mode == StartMode::Zero ? "zero" : "atb";
}

std::optional<Encoder> parse_encoder(std::string_view text) {
  if (text == "gaussian") return Encoder::Gaussian;
  if (text == "dct") return Encoder::Dct;
  return std::nullopt;
}

std::optional<AmplitudeMode> parse_amplitude(std::string_view text) {
  if (text == "positive-unit") return AmplitudeMode::PositiveUnit;
  if (text == "gaussian") return AmplitudeMode::GaussianAmp;
  return std::nullopt;
}

std::optional<StartMode> parse_start(std::string_view text) {
  if (text == "zero") return StartMode::Zero;
  if (text == "atb") return StartMode::AdjointOfB;
  return std::nullopt;
}

Vector gen_sparse_signal(std::size_t n, std::size_t p, AmplitudeMode mode,
                         std::uint64_t seed) {
  if (p == 0 || p > n) {
    std::ostringstream os;
    os << "sparsity p=" << p << " must satisfy 0 < p <= n=" << n;
    throw ArgumentError(os.str());
  }
  auto support_rng = make_rng(seed, RngStream::Support);
  const auto support = sample_without_replacement(n, p, support_rng);

  auto amp_rng = make_rng(seed, RngStream::Amplitude);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t idx : support) {
    double a = 1.0;
    if (mode == AmplitudeMode::GaussianAmp) {
      // |N(0,1)|, redrawn on an exact zero so the support size is exact.
      do {
        a = std::abs(normal(amp_rng));
      } while (a == 0.0);
    }
    x[static_cast<Eigen::Index>(idx)] = a;
  }
  return x;
}

LinearOperatorPtr gen_gaussian_operator(std::size_t m, std::size_t n,
                                        std::uint64_t seed) {
  if (m == 0 || n == 0) throw ArgumentError("operator dimensions must be positive");
  auto rng = make_rng(seed, RngStream::Matrix);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix M(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  // Filled column-major in storage order so the draw sequence is fixed.
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, j) = scale * normal(rng);
  }
  return dense_operator(std::move(M));
}

// Partial DCT -----------------------------------------------------------------
//
// FFTW's REDFT10 computes Y_k = 2 sum_j x_j cos(pi (2j+1) k / 2n), so the
// orthonormal DCT-II is Y_k * c_k / 2 with c_0 = sqrt(1/n), c_k = sqrt(2/n).
// Its transpose (DCT-III) maps z_0 = c_0 y_0, z_k = c_k y_k / 2 through
// REDFT01, which computes z_0 + 2 sum_{k>0} z_k cos(pi k (2j+1) / 2n).

PartialDctOperator::PartialDctOperator(std::size_t n, std::vector<std::size_t> rows)
    : n_(n), rows_(std::move(rows)) {
  if (n_ == 0) throw ArgumentError("DCT length must be positive");
  for (std::size_t r : rows_) {
    if (r >= n_) throw DimensionError("DCT row index out of range");
  }
  std::vector<double> in(n_), out(n_);
  const int len = static_cast<int>(n_);
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  forward_plan_ = fftw_plan_r2r_1d(len, in.data(), out.data(), FFTW_REDFT10,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_r2r_1d(len, in.data(), out.data(), FFTW_REDFT01,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!forward_plan_ || !inverse_plan_) {
    throw NumericalError("failed to create DCT plans");
  }
}

PartialDctOperator::~PartialDctOperator() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void PartialDctOperator::apply(const Vector& x, Vector& out) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw DimensionError("DCT operator input size");
  }
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<double> full(n_);
  fftw_execute_r2r(static_cast<fftw_plan>(forward_plan_), in.data(), full.data());
  const double c0 = std::sqrt(1.0 / static_cast<double>(n_));
  const double ck = std::sqrt(2.0 / static_cast<double>(n_));
  out.resize(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t k = rows_[i];
    out[static_cast<Eigen::Index>(i)] = full[k] * 0.5 * (k == 0 ? c0 : ck);
  }
}

void PartialDctOperator::apply_adjoint(const Vector& y, Vector& out) const {
  if (static_cast<std::size_t>(y.size()) != rows_.size()) {
    throw DimensionError("DCT adjoint input size");
  }
  const double c0 = std::sqrt(1.0 / static_cast<double>(n_));
  const double ck = std::sqrt(2.0 / static_cast<double>(n_));
  std::vector<double> coeffs(n_, 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t k = rows_[i];
    const double yi = y[static_cast<Eigen::Index>(i)];
    coeffs[k] = k == 0 ? c0 * yi : 0.5 * ck * yi;
  }
  out.resize(static_cast<Eigen::Index>(n_));
  fftw_execute_r2r(static_cast<fftw_plan>(inverse_plan_), coeffs.data(),
                   out.data());
}

LinearOperatorPtr gen_partial_dct_operator(std::size_t m, std::size_t n,
                                           std::uint64_t seed) {
  if (m == 0 || m > n) {
    std::ostringstream os;
    os << "partial DCT needs 0 < m <= n (m=" << m << ", n=" << n << ")";
    throw ArgumentError(os.str());
  }
  auto rng = make_rng(seed, RngStream::Rows);
  return std::make_shared<PartialDctOperator>(
      n, sample_without_replacement(n, m, rng));
}

double rel_err(const Vector& x_star, const Vector& x_bar) {
  if (x_star.size() != x_bar.size()) {
    throw DimensionError("rel_err: vectors differ in length");
  }
  const double denom = x_bar.norm();
  if (!(denom > 0.0)) {
    throw ArgumentError("rel_err undefined for a zero ground truth");
  }
  return (x_star - x_bar).norm() / denom;
}

// Experiments -----------------------------------------------------------------

void CsParams::validate() const {
  if (n == 0 || m == 0) throw ArgumentError("n and m must be positive");
  if (m > n) throw ArgumentError("need m <= n");
  if (p == 0 || p > n) throw ArgumentError("need 0 < p <= n");
  if (!(sigma >= 0.0)) throw ArgumentError("sigma must be >= 0");
  if (!(mu >= 0.0)) throw ArgumentError("mu must be >= 0");
}

CsInstance make_cs_instance(const CsParams& params) {
  params.validate();
  CsInstance inst;
  inst.n = params.n;
  inst.m = params.m;
  inst.p = params.p;
  inst.sigma = params.sigma;
  inst.seed = params.seed;
  inst.x_bar = gen_sparse_signal(params.n, params.p, params.amplitude, params.seed);
  inst.A = params.encoder == Encoder::Gaussian
               ? gen_gaussian_operator(params.m, params.n, params.seed)
               : gen_partial_dct_operator(params.m, params.n, params.seed);
  inst.b = inst.A->forward(inst.x_bar);
  if (params.sigma > 0.0) {
    auto rng = make_rng(params.seed, RngStream::Noise);
    std::normal_distribution<double> noise(0.0, params.sigma);
    for (Eigen::Index i = 0; i < inst.b.size(); ++i) inst.b[i] += noise(rng);
  }
  return inst;
}

RecoveryReport solve_instance(const CsInstance& instance, double mu,
                              StartMode start, const SolverConfig& cfg) {
  CompositeProblem problem{least_squares(instance.A, instance.b),
                           RegularizerSpec::l1(mu)};
  const Vector x0 = start == StartMode::Zero
                        ? Vector::Zero(static_cast<Eigen::Index>(instance.n))
                        : instance.A->adjoint(instance.b);
  RunHooks hooks;
  hooks.error_metric = [&](const Vector& x) { return rel_err(x, instance.x_bar); };
  RunResult res = run(problem, x0, cfg, hooks);

  RecoveryReport report;
  report.rel_err = rel_err(res.x, instance.x_bar);
  report.iterations = res.iterations;
  report.nf = res.nf;
  report.elapsed = res.elapsed;
  report.reason = res.reason;
  report.F = res.F;
  report.x_star = std::move(res.x);
  report.x_bar = instance.x_bar;
  report.trace = std::move(res.records);
  return report;
}

RecoveryReport run_recovery(const CsParams& params, const SolverConfig& cfg) {
  const CsInstance instance = make_cs_instance(params);
  return solve_instance(instance, params.mu, params.start, cfg);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (!(lo > 0.0 && hi >= lo)) throw ArgumentError("log_grid needs 0 < lo <= hi");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = std::pow(10.0, a + t * (b - a));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<SweepRow> run_h_sweep(std::vector<double> h_values,
                                  const CsParams& params,
                                  const SolverConfig& base_cfg, std::size_t jobs) {
  for (double h : h_values) {
    if (!(h > 0.0 && h <= 1.0)) {
      throw ArgumentError("every h must lie in (0, 1]");
    }
  }
  std::sort(h_values.begin(), h_values.end());
  const CsInstance instance = make_cs_instance(params);

  const auto one = [&](double h) {
    SolverConfig cfg = base_cfg;
    cfg.h = h;
    const RecoveryReport rep = solve_instance(instance, params.mu, params.start, cfg);
    return SweepRow{h, rep.iterations, rep.nf, rep.elapsed, rep.rel_err, rep.reason};
  };

  std::vector<SweepRow> rows(h_values.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < h_values.size(); ++i) rows[i] = one(h_values[i]);
    return rows;
  }
  for (std::size_t start = 0; start < h_values.size(); start += jobs) {
    std::vector<std::future<SweepRow>> batch;
    const std::size_t end = std::min(h_values.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, one, h_values[i]));
    }
    for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
  }
  return rows;
}

}  // namespace nbbl1
