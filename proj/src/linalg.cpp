#include "hdrm/linalg.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace hdrm {

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix centering_matrix(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("centering_matrix: dimension must be >= 1");
  Matrix p = Matrix::Identity(d, d);
  p.array() -= 1.0 / static_cast<double>(d);
  return p;
}

ProjectionCheck validate_projection(const Matrix& t, double tolerance) {
  ProjectionCheck check;
  if (t.rows() != t.cols() || t.size() == 0) return check;
  check.max_asymmetry = (t - t.transpose()).cwiseAbs().maxCoeff();
  check.max_idempotence = (t * t - t).cwiseAbs().maxCoeff();
  check.symmetric = check.max_asymmetry <= tolerance;
  check.idempotent = check.max_idempotence <= tolerance;
  return check;
}

Projection projection_from_h(const Matrix& h) {
  if (h.size() == 0) throw std::invalid_argument("projection_from_h: empty matrix");
  Projection out;
  const Matrix gram = h * h.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("projection_from_h: eigendecomposition failed");
  }
  const Vector& vals = eig.eigenvalues();
  const double lambda_max = vals.cwiseAbs().maxCoeff();
  if (lambda_max <= 0.0) {
    out.matrix = Matrix::Zero(h.cols(), h.cols());
    out.rank = 0;
    out.degenerate = true;
    return out;
  }
  const double cutoff = 1e-12 * lambda_max;
  Vector inv = Vector::Zero(vals.size());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) {
      inv[i] = 1.0 / vals[i];
      ++rank;
    }
  }
  const Matrix pinv =
      eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  Matrix t = h.transpose() * pinv * h;
  t = 0.5 * (t + t.transpose());  // enforce exact symmetry
  out.matrix = std::move(t);
  out.rank = rank;
  return out;
}

Eigen::Index projector_rank(const Matrix& t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t, Eigen::EigenvaluesOnly);
  return (eig.eigenvalues().array() >= 0.5).count();
}

CompanionFactor companion(const Matrix& t) {
  if (t.rows() != t.cols() || t.size() == 0) {
    throw std::invalid_argument("companion: matrix must be square and nonempty");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("companion: eigendecomposition failed");
  }
  const Vector& vals = eig.eigenvalues();
  const Eigen::Index rank = (vals.array() >= 0.5).count();
  if (rank == 0) {
    throw std::invalid_argument(
        "companion: hypothesis matrix is zero; statistic is degenerate");
  }
  // eigenvalues are ascending, the projector's unit eigenvectors come last
  CompanionFactor f;
  f.l = eig.eigenvectors().rightCols(rank).transpose();
  return f;
}

}  // namespace hdrm
