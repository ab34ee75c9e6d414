#pragma once

#include "nbbl1/core_model.hpp"

namespace nbbl1 {

/// Componentwise sign(v) * max(|v| - tau, 0).
Vector soft_threshold(const Vector& v, double tau);

/// max(||v|| - tau, 0) * v / ||v||, zero when ||v|| <= tau.
Vector block_shrink_l2(const Vector& v, double tau);

struct SvdResult {
  Matrix U;      // m x r, orthonormal columns
  Vector sigma;  // r, nonincreasing, nonnegative
  Matrix V;      // n x r, orthonormal columns
  int sweeps = 0;
};

struct SvdOptions {
  double tol = 1e-12;
  int max_sweeps = 60;
};

/// Thin SVD (r = min(m, n)) by one-sided Jacobi rotations.
SvdResult small_svd(const Matrix& Y, const SvdOptions& opts = {});

/// Singular value thresholding: U diag((sigma - tau)_+) V^T.
Matrix svt(const Matrix& Y, double tau);

/// Sum of singular values.
double nuclear_norm(const Matrix& Y);

/// Proximal map of tau * R for the regularizer kind in `spec` (mu is
/// ignored; tau is the full threshold). Respects spec.free_tail.
Vector shrink(const RegularizerSpec& spec, const Vector& v, double tau);

}  // namespace nbbl1
