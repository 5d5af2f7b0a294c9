#pragma once

#include <cstdint>
#include <vector>

#include "hdrm/dataset.hpp"
#include "hdrm/hypotheses.hpp"

namespace hdrm {

/// Precomputed subplot-level inner products x_{i,j}' T_S x_{r,k} for all
/// group pairs. Every trace estimator kernel reduces to lookups here, so the
/// companion/full-matrix distinction is confined to this one construction
/// step: with use_companion the Gram blocks come from the reduced scores
/// L_S x, otherwise from T_S directly.
class TraceContext {
 public:
  TraceContext(const Dataset& ds, const ProjectionPair& pair, bool use_companion);

  Eigen::Index groups() const { return a_; }
  Eigen::Index group_size(Eigen::Index i) const { return n_[static_cast<std::size_t>(i)]; }
  double n_total() const { return n_total_; }
  const Matrix& tw() const { return *tw_; }
  /// N / n_i
  double weight(Eigen::Index i) const { return n_total_ / static_cast<double>(group_size(i)); }

  /// x_{i,j}' T_S x_{r,k}
  double q(Eigen::Index i, Eigen::Index j, Eigen::Index r, Eigen::Index k) const {
    if (i <= r) return gram_[idx(i, r)](j, k);
    return gram_[idx(r, i)](k, j);
  }

  /// (x_{i,l1} - x_{i,l2})' T_S (x_{r,k1} - x_{r,k2}).
  /// Grouped so that swapping l1/l2 (or k1/k2) flips the sign bit-exactly.
  double ydot(Eigen::Index i, Eigen::Index l1, Eigen::Index l2, Eigen::Index r,
              Eigen::Index k1, Eigen::Index k2) const {
    return (q(i, l1, r, k1) + q(i, l2, r, k2)) - (q(i, l1, r, k2) + q(i, l2, r, k1));
  }

  /// Gram block for a single group (i,i), used by the one-group estimators.
  const Matrix& gram(Eigen::Index i) const { return gram_[idx(i, i)]; }

 private:
  std::size_t idx(Eigen::Index i, Eigen::Index r) const {
    // row-major upper triangle of the a x a pair table
    const auto ia = static_cast<std::size_t>(i);
    const auto ra = static_cast<std::size_t>(r);
    const auto aa = static_cast<std::size_t>(a_);
    return ia * aa - ia * (ia + 1) / 2 + ra;
  }

  Eigen::Index a_ = 0;
  std::vector<Eigen::Index> n_;
  double n_total_ = 0.0;
  const Matrix* tw_ = nullptr;
  std::vector<Matrix> gram_;  // blocks (i,r) with i <= r
};

}  // namespace hdrm
