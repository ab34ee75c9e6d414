#include "nbbl1/prox_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace nbbl1 {

namespace {

void require_nonnegative(double tau) {
  if (!(tau >= 0.0)) {
    throw ArgumentError("shrinkage threshold must be nonnegative");
  }
}

// Largest |a_p^T a_q| / (||a_p|| ||a_q||) over column pairs.
double max_column_coherence(const Matrix& A) {
  double worst = 0.0;
  for (Eigen::Index p = 0; p < A.cols(); ++p) {
    const double np = A.col(p).norm();
    for (Eigen::Index q = p + 1; q < A.cols(); ++q) {
      const double nq = A.col(q).norm();
      if (np == 0.0 || nq == 0.0) continue;
      worst = std::max(worst, std::abs(A.col(p).dot(A.col(q))) / (np * nq));
    }
  }
  return worst;
}

// Fills columns of U flagged in `missing` with an orthonormal completion of
// the remaining columns.
void complete_orthonormal(Matrix& U, const std::vector<bool>& missing) {
  const Eigen::Index m = U.rows();
  Eigen::Index candidate = 0;
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    if (!missing[static_cast<std::size_t>(j)]) continue;
    bool placed = false;
    while (!placed && candidate < m) {
      Vector e = Vector::Unit(m, candidate++);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < U.cols(); ++i) {
          if (i == j || (missing[static_cast<std::size_t>(i)] && i > j)) {
            continue;
          }
          e -= U.col(i).dot(e) * U.col(i);
        }
      }
      const double nrm = e.norm();
      if (nrm > 0.5) {
        U.col(j) = e / nrm;
        placed = true;
      }
    }
    if (!placed) {
      throw NumericalError("could not complete orthonormal singular basis");
    }
  }
}

// One-sided Jacobi on a tall (rows >= cols) matrix.
SvdResult jacobi_tall(const Matrix& Y, const SvdOptions& opts) {
  Matrix A = Y;
  const Eigen::Index n = A.cols();
  Matrix V = Matrix::Identity(n, n);

  int sweep = 0;
  bool rotated = true;
  while (rotated) {
    if (sweep == opts.max_sweeps) {
      std::ostringstream os;
      os << "Jacobi SVD did not converge in " << opts.max_sweeps
         << " sweeps; max column coherence " << max_column_coherence(A);
      throw NumericalError(os.str());
    }
    rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = A.col(p).squaredNorm();
        const double beta = A.col(q).squaredNorm();
        const double gamma = A.col(p).dot(A.col(q));
        if (gamma == 0.0 ||
            std::abs(gamma) <= opts.tol * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
          const double ap = A(i, p);
          A(i, p) = c * ap - s * A(i, q);
          A(i, q) = s * ap + c * A(i, q);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vp = V(i, p);
          V(i, p) = c * vp - s * V(i, q);
          V(i, q) = s * vp + c * V(i, q);
        }
      }
    }
    ++sweep;
  }

  Vector norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms[j] = A.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return norms[a] > norms[b];
                   });

  SvdResult out;
  out.sweeps = sweep;
  out.U.resize(A.rows(), n);
  out.V.resize(n, n);
  out.sigma.resize(n);
  const double sigma_max = n > 0 ? norms[order.front()] : 0.0;
  // Columns this small have lost orthogonality to rounding; their direction
  // is rebuilt from the complement instead of normalized.
  const double floor = sigma_max * 1e-13;
  std::vector<bool> missing(static_cast<std::size_t>(n), false);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.sigma[j] = norms[src];
    out.V.col(j) = V.col(src);
    if (norms[src] > floor && norms[src] > 0.0) {
      out.U.col(j) = A.col(src) / norms[src];
    } else {
      out.U.col(j).setZero();
      missing[static_cast<std::size_t>(j)] = true;
    }
  }
  complete_orthonormal(out.U, missing);
  return out;
}

}  // namespace

Vector soft_threshold(const Vector& v, double tau) {
  require_nonnegative(tau);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double excess = std::abs(v[i]) - tau;
    out[i] = excess <= 0.0 ? 0.0 : std::copysign(excess, v[i]);
  }
  return out;
}

Vector block_shrink_l2(const Vector& v, double tau) {
  require_nonnegative(tau);
  const double nrm = v.norm();
  if (nrm <= tau) return Vector::Zero(v.size());
  return ((nrm - tau) / nrm) * v;
}

SvdResult small_svd(const Matrix& Y, const SvdOptions& opts) {
  if (!Y.allFinite()) {
    throw ArgumentError("small_svd: matrix has non-finite entries");
  }
  if (Y.rows() >= Y.cols()) return jacobi_tall(Y, opts);
  SvdResult t = jacobi_tall(Y.transpose(), opts);
  std::swap(t.U, t.V);
  return t;
}

Matrix svt(const Matrix& Y, double tau) {
  require_nonnegative(tau);
  if (Y.size() == 0) return Y;
  const SvdResult svd = small_svd(Y);
  const Vector shrunk = (svd.sigma.array() - tau).max(0.0).matrix();
  return svd.U * shrunk.asDiagonal() * svd.V.transpose();
}

double nuclear_norm(const Matrix& Y) {
  if (Y.size() == 0) return 0.0;
  return small_svd(Y).sigma.sum();
}

Vector shrink(const RegularizerSpec& spec, const Vector& v, double tau) {
  spec.validate(static_cast<std::size_t>(v.size()));
  const auto penalized =
      static_cast<Eigen::Index>(static_cast<std::size_t>(v.size()) - spec.free_tail);
  switch (spec.kind) {
    case RegularizerKind::L1: {
      Vector out = v;
      out.head(penalized) = soft_threshold(v.head(penalized), tau);
      return out;
    }
    case RegularizerKind::L2Norm: {
      Vector out = v;
      out.head(penalized) = block_shrink_l2(v.head(penalized), tau);
      return out;
    }
    case RegularizerKind::Nuclear: {
      const Eigen::Map<const Matrix> Y(v.data(),
                                       static_cast<Eigen::Index>(spec.rows),
                                       static_cast<Eigen::Index>(spec.cols));
      const Matrix X = svt(Y, tau);
      return Eigen::Map<const Vector>(X.data(), X.size());
    }
  }
  return v;
}

}  // namespace nbbl1
