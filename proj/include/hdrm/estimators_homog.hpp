#pragma once

#include <cstdint>
#include <optional>

#include "hdrm/dataset.hpp"
#include "hdrm/estimators_multi.hpp"
#include "hdrm/hypotheses.hpp"
#include "hdrm/trace_context.hpp"

namespace hdrm {

/// Pooled trace estimates for equal group covariances Sigma_1 = .. = Sigma_a.
struct HomogTraces {
  double c1 = 0.0;  // estimates tr(T_S Sigma)
  double c2 = 0.0;  // estimates tr((T_S Sigma)^2)
  double c3 = 0.0;  // estimates tr((T_S Sigma)^3)
  bool c3_subsampled = false;
  std::int64_t subsample_count = 0;
};

/// Pooled mean difference form; all n_i >= 2.
double estimate_c1(const Dataset& ds, const ProjectionPair& pair,
                   bool use_companion = true,
                   const std::optional<Subsample>& sub = std::nullopt);

/// Pooled disjoint-pair squared form; all n_i >= 4.
double estimate_c2(const Dataset& ds, const ProjectionPair& pair,
                   bool use_companion = true,
                   const std::optional<Subsample>& sub = std::nullopt);

/// Pooled exact six-index cyclic form; all n_i >= 6, per-group term counts
/// capped as in estimate_b6_exact.
double estimate_c3_exact(const Dataset& ds, const ProjectionPair& pair,
                         bool use_companion = true, std::int64_t term_cap = 10000000);

/// Subsampled six-index form: `budget` draws per group, averaged over a*B.
double estimate_c3_subsampled(const Dataset& ds, const ProjectionPair& pair,
                              std::int64_t budget, std::uint64_t seed,
                              bool use_companion = true);

namespace detail {
double c1(const TraceContext& ctx, const std::optional<Subsample>& sub);
double c2(const TraceContext& ctx, const std::optional<Subsample>& sub);
double c3_exact(const TraceContext& ctx, std::int64_t term_cap);
double c3_subsampled(const TraceContext& ctx, std::int64_t budget, std::uint64_t seed);
}  // namespace detail

}  // namespace hdrm
