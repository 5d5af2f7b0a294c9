#pragma once

#include <Eigen/Dense>

namespace hdrm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default absolute tolerance for projector validation.
inline constexpr double kProjectionTol = 1e-8;

/// Kronecker product: block (i,j) of the result is A(i,j) * B.
Matrix kron(const Matrix& a, const Matrix& b);

/// Centering matrix P_d = I_d - J_d / d (rank d-1, annihilates constants).
Matrix centering_matrix(Eigen::Index d);

struct ProjectionCheck {
  bool symmetric = false;
  bool idempotent = false;
  double max_asymmetry = 0.0;    // max |T_ij - T_ji|
  double max_idempotence = 0.0;  // max |(T*T - T)_ij|
  bool ok() const { return symmetric && idempotent; }
};

/// Reports how far T is from being an orthogonal projector. Never throws on
/// invalid matrices; the caller decides whether to warn.
ProjectionCheck validate_projection(const Matrix& t, double tolerance = kProjectionTol);

struct Projection {
  Matrix matrix;
  Eigen::Index rank = 0;
  bool degenerate = false;  // input H was (numerically) zero
};

/// Orthogonal projector onto the row space of H: T = H' (H H')^+ H.
/// The pseudo-inverse uses a symmetric eigendecomposition of H H' with
/// relative eigenvalue cutoff 1e-12 * lambda_max. Invariant under row
/// scaling of H; the zero matrix yields the zero projector with the
/// degenerate flag set.
Projection projection_from_h(const Matrix& h);

/// Rank of a projector: eigenvalues cluster at {0,1}, so count those >= 1/2.
Eigen::Index projector_rank(const Matrix& t);

struct CompanionFactor {
  Matrix l;  // rank x m, orthonormal rows: L L' = I_r, L' L = T
};

/// Minimal-row factor of a projector: quadratic forms satisfy
/// x' T x = |L x|^2, which lets every estimator work in rank(T) dimensions
/// instead of m. Built from the eigenvectors of T with eigenvalue >= 1/2.
/// Throws std::invalid_argument when rank(T) = 0.
CompanionFactor companion(const Matrix& t);

}  // namespace hdrm
