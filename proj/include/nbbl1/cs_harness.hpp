#pragma once

#include "nbbl1/core_model.hpp"
#include "nbbl1/objectives.hpp"
#include "nbbl1/solver.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace nbbl1 {

// Seeded randomness -----------------------------------------------------------

/// Independent generator streams derived from one seed, so that changing how
/// one component is drawn leaves the others untouched.
enum class RngStream : std::uint64_t {
  Support = 1,
  Amplitude = 2,
  Matrix = 3,
  Noise = 4,
  Rows = 5,
};

/// mt19937_64 seeded with splitmix64(seed + stream * golden-ratio constant).
std::mt19937_64 make_rng(std::uint64_t seed, RngStream stream);

// Instances -------------------------------------------------------------------

enum class AmplitudeMode { PositiveUnit, GaussianAmp };
enum class Encoder { Gaussian, Dct };
enum class StartMode { Zero, AdjointOfB };

std::string_view to_string(AmplitudeMode mode);
std::string_view to_string(Encoder encoder);
std::string_view to_string(StartMode mode);
std::optional<Encoder> parse_encoder(std::string_view text);
std::optional<AmplitudeMode> parse_amplitude(std::string_view text);
std::optional<StartMode> parse_start(std::string_view text);

/// Exactly p nonzeros at uniformly chosen positions; +1 or |N(0,1)| values.
Vector gen_sparse_signal(std::size_t n, std::size_t p, AmplitudeMode mode,
                         std::uint64_t seed);

/// Dense m x n with i.i.d. N(0, 1) / sqrt(m) entries.
LinearOperatorPtr gen_gaussian_operator(std::size_t m, std::size_t n,
                                        std::uint64_t seed);

/// Rows `rows` of the orthonormal n x n DCT-II matrix, applied through a fast
/// transform. Holds O(n) state.
class PartialDctOperator final : public LinearOperator {
 public:
  PartialDctOperator(std::size_t n, std::vector<std::size_t> rows);
  ~PartialDctOperator() override;
  PartialDctOperator(const PartialDctOperator&) = delete;
  PartialDctOperator& operator=(const PartialDctOperator&) = delete;

  std::size_t rows() const override { return rows_.size(); }
  std::size_t cols() const override { return n_; }
  void apply(const Vector& x, Vector& out) const override;
  void apply_adjoint(const Vector& y, Vector& out) const override;

  const std::vector<std::size_t>& selected_rows() const { return rows_; }

 private:
  std::size_t n_;
  std::vector<std::size_t> rows_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// m rows drawn uniformly without replacement (sorted ascending).
LinearOperatorPtr gen_partial_dct_operator(std::size_t m, std::size_t n,
                                           std::uint64_t seed);

/// ||x_star - x_bar|| / ||x_bar||.
double rel_err(const Vector& x_star, const Vector& x_bar);

struct CsParams {
  std::size_t n = 2048;
  std::size_t m = 512;
  std::size_t p = 64;
  double sigma = 1e-3;
  double mu = 0.00390625;  // 2^-8
  Encoder encoder = Encoder::Gaussian;
  AmplitudeMode amplitude = AmplitudeMode::PositiveUnit;
  StartMode start = StartMode::Zero;
  std::uint64_t seed = 7;

  void validate() const;
};

struct CsInstance {
  std::size_t n = 0, m = 0, p = 0;
  LinearOperatorPtr A;
  Vector b;
  Vector x_bar;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// b = A x_bar + omega with omega ~ N(0, sigma^2 I).
CsInstance make_cs_instance(const CsParams& params);

struct RecoveryReport {
  double rel_err = 0.0;
  std::size_t iterations = 0;
  std::size_t nf = 0;
  double elapsed = 0.0;
  TerminationReason reason = TerminationReason::MaxIterations;
  double F = 0.0;
  Vector x_star;
  Vector x_bar;
  std::vector<IterationRecord> trace;
};

/// Solves 1/2||Ax - b||^2 + mu ||x||_1 on a prepared instance.
RecoveryReport solve_instance(const CsInstance& instance, double mu,
                              StartMode start, const SolverConfig& cfg);

RecoveryReport run_recovery(const CsParams& params, const SolverConfig& cfg);

struct SweepRow {
  double h = 0.0;
  std::size_t iterations = 0;
  std::size_t nf = 0;
  double elapsed = 0.0;
  double rel_err = 0.0;
  TerminationReason reason = TerminationReason::MaxIterations;
};

/// n log-spaced points on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// One recovery per h on a single shared instance; rows ascend in h. With
/// jobs > 1 points run concurrently.
std::vector<SweepRow> run_h_sweep(std::vector<double> h_values,
                                  const CsParams& params,
                                  const SolverConfig& base_cfg,
                                  std::size_t jobs = 1);

}  // namespace nbbl1
