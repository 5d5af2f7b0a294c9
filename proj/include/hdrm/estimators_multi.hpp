#pragma once

#include <cstdint>
#include <optional>

#include "hdrm/budget.hpp"
#include "hdrm/dataset.hpp"
#include "hdrm/hypotheses.hpp"
#include "hdrm/trace_context.hpp"

namespace hdrm {

/// Identifies the random substream of an estimator instance; combined with
/// the user seed and the draw counter, every subsample index tuple is a pure
/// function of (seed, stream, b), independent of threading.
namespace streams {
inline constexpr std::uint64_t kB6 = 0x01;
inline constexpr std::uint64_t kC3 = 0x02;    // + group index
inline constexpr std::uint64_t kC1 = 0x100;   // + group index
inline constexpr std::uint64_t kC2 = 0x200;   // + group index
inline constexpr std::uint64_t kBi1 = 0x300;  // + group index
inline constexpr std::uint64_t kBi4 = 0x400;  // + group index
inline constexpr std::uint64_t kBir3 = 0x10000;  // + i*256 + r
}  // namespace streams

/// Subsampling request for one estimator instance.
struct Subsample {
  std::int64_t budget = 0;  // number of random index tuples
  std::uint64_t seed = 0;
};

/// Multi-group trace estimates assembled from within-group differences.
struct MultiTraces {
  double b2 = 0.0;  // estimates tr(T Sigma_N)
  double b5 = 0.0;  // estimates tr((T Sigma_N)^2)
  double b6 = 0.0;  // estimates tr((T Sigma_N)^3)
  bool b6_subsampled = false;
  std::int64_t subsample_count = 0;
};

/// Within-group mean difference form; unbiased for tr(T_S Sigma_i). n_i >= 2.
double estimate_b_i1(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                     bool use_companion = true,
                     const std::optional<Subsample>& sub = std::nullopt);

/// Weighted combination matching E[Q_N]; all n_i >= 2.
double estimate_b2(const Dataset& ds, const ProjectionPair& pair,
                   bool use_companion = true,
                   const std::optional<Subsample>& sub = std::nullopt);

/// Cross-group squared difference form, i != r; unbiased for
/// tr(T_S Sigma_i T_S Sigma_r). n_i, n_r >= 2.
double estimate_b_ir3(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                      Eigen::Index r, bool use_companion = true,
                      const std::optional<Subsample>& sub = std::nullopt);

/// Within-group disjoint-pair squared form; unbiased for tr((T_S Sigma_i)^2).
/// n_i >= 4.
double estimate_b_i4(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                     bool use_companion = true,
                     const std::optional<Subsample>& sub = std::nullopt);

/// Weighted assembly matching tr((T Sigma_N)^2); all n_i >= 4.
double estimate_b5(const Dataset& ds, const ProjectionPair& pair,
                   bool use_companion = true,
                   const std::optional<Subsample>& sub = std::nullopt);

/// Exact six-index estimator of tr((T Sigma_N)^3): averages the cyclic
/// product over every per-group ordered 6-tuple of distinct subjects.
/// Requires all n_i >= 6 and at most `term_cap` joint tuples (default 1e7).
double estimate_b6_exact(const Dataset& ds, const ProjectionPair& pair,
                         bool use_companion = true, std::int64_t term_cap = 10000000);

/// Subsampled six-index estimator: `budget` independent draws of one 6-tuple
/// per group. Unbiased for tr((T Sigma_N)^3) at any budget.
double estimate_b6_subsampled(const Dataset& ds, const ProjectionPair& pair,
                              std::int64_t budget, std::uint64_t seed,
                              bool use_companion = true);

namespace detail {
double b_i1(const TraceContext& ctx, Eigen::Index i, const std::optional<Subsample>& sub);
double b2(const TraceContext& ctx, const std::optional<Subsample>& sub);
double b_ir3(const TraceContext& ctx, Eigen::Index i, Eigen::Index r,
             const std::optional<Subsample>& sub);
double b_i4(const TraceContext& ctx, Eigen::Index i, const std::optional<Subsample>& sub);
double b5(const TraceContext& ctx, const std::optional<Subsample>& sub);
double b6_exact(const TraceContext& ctx, std::int64_t term_cap);
double b6_subsampled(const TraceContext& ctx, std::int64_t budget, std::uint64_t seed);
}  // namespace detail

}  // namespace hdrm
