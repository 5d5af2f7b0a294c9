#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdrm/budget.hpp"
#include "hdrm/dataset.hpp"
#include "hdrm/hypotheses.hpp"

namespace hdrm {

/// Ceiling for reported degrees of freedom; reached only when the estimated
/// third trace is numerically zero (the normal-limit regime).
inline constexpr double kMaxDegreesOfFreedom = 1e8;

struct TestResult {
  double statistic_w = 0.0;
  double f_hat = 1.0;
  double tau_hat = 1.0;  // 1 / f_hat
  double p_value = 1.0;

  Eigen::Index n_total = 0;
  Eigen::Index dimension = 0;
  Eigen::Index groups = 1;
  std::string hypothesis_label;
  bool cov_equal = false;
  bool subsampling = false;
  std::int64_t budget_used = 0;  // 0 when no subsampling was involved
  int removed_incomplete = 0;
  std::optional<std::uint64_t> seed;

  // structured warnings, also rendered by the reporting layer
  bool projection_warning = false;    // supplied hypothesis matrix not a projector
  bool f_clamped = false;             // raw f estimate below 1, reported as 1
  bool third_trace_degenerate = false;  // third trace ~ 0, f capped high

  std::vector<std::string> warnings() const;
};

struct QStatistic {
  double q = 0.0;
  std::vector<Vector> group_means;  // one d-vector per group
  std::vector<double> weights;      // N / n_i
};

/// ANOVA-type statistic Q = N xbar' (T_W (x) T_S) xbar, evaluated blockwise.
QStatistic q_statistic(const Dataset& ds, const ProjectionPair& pair,
                       bool use_companion = true);

/// One-group test: W = (Q - A1)/sqrt(2 A2), f = A2^3/A3^2 (clamped to >= 1),
/// p from the standardized chi-square tail. Requires N >= 4.
TestResult run_single(const Dataset& ds, const ProjectionPair& pair, bool am = true);

struct GroupedOptions {
  bool cov_equal = false;    // pooled C-estimators instead of groupwise B
  bool subsampling = false;  // subsample the pair/quadruple estimators too
  SubsampleBudget budget{};  // default "1000*N"
  std::optional<std::uint64_t> seed;
  bool am = true;  // companion-reduced evaluation
};

/// Multi-group test; heteroscedastic (B) or pooled homogeneous (C) path.
/// The six-index trace is always subsampled with the resolved budget.
/// Requires a >= 2 and every n_i >= 6.
TestResult run_grouped(const Dataset& ds, const ProjectionPair& pair,
                       const GroupedOptions& opts = {});

}  // namespace hdrm
