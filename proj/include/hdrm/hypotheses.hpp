#pragma once

#include <string>

#include "hdrm/linalg.hpp"

namespace hdrm {

/// Predefined split-plot hypotheses. Whole/Sub/Interaction/Identical/Flat
/// select the standard projector pairs; Custom wraps user matrices.
enum class Hypothesis { Flat, Whole, Sub, Interaction, Identical, Custom };

/// Case-insensitive lookup of "flat", "whole", "sub", "interaction",
/// "identical". Throws std::invalid_argument on anything else.
Hypothesis hypothesis_from_name(const std::string& name);

/// The factorized hypothesis projector T = T_W (x) T_S together with the
/// companion factors used for rank-reduced evaluation.
struct ProjectionPair {
  Matrix tw;  // a x a whole-plot projector
  Matrix ts;  // d x d subplot projector
  Matrix lw;  // rank_w x a companion of tw
  Matrix ls;  // rank_s x d companion of ts
  Eigen::Index rank_w = 0;
  Eigen::Index rank_s = 0;
  std::string label;

  // validation outcome for custom matrices (predefined pairs always pass)
  bool valid_projection = true;
  double max_deviation = 0.0;

  Eigen::Index groups() const { return tw.rows(); }
  Eigen::Index dimension() const { return ts.rows(); }
  Eigen::Index rank() const { return rank_w * rank_s; }
};

/// One-group pair: T_W = [1], T_S per hypothesis. Only Flat (P_d) and
/// Custom are meaningful for a single group.
ProjectionPair build_single(Hypothesis kind, Eigen::Index d);

/// One-group pair around a user-supplied d x d projector. An invalid
/// projector is accepted but flagged (valid_projection = false).
ProjectionPair build_custom_single(const Matrix& ts, double tolerance = kProjectionTol);

/// Predefined multi-group pair for a groups and d dimensions.
ProjectionPair build_grouped(Hypothesis kind, Eigen::Index a, Eigen::Index d);

/// Multi-group pair from user-supplied factors; both are validated and an
/// invalid factor is flagged, not rejected.
ProjectionPair build_custom_grouped(const Matrix& tw, const Matrix& ts,
                                    double tolerance = kProjectionTol);

}  // namespace hdrm
