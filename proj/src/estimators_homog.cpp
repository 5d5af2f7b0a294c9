#include "hdrm/estimators_homog.hpp"

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "estimator_kernels.hpp"
#include "hdrm/reduction.hpp"
#include "hdrm/rng.hpp"

namespace hdrm {

namespace {

using detail::comb4;
using detail::kDrawBlock;
using detail::kTupleBlock;
using detail::ordered_6tuples;
using detail::perm6;

void require_all_groups(const TraceContext& ctx, Eigen::Index need, const char* what) {
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    detail::require_group_size(ctx, i, need, what);
  }
}

// Y(t1,t2)' T_S Y(t3,t4) * Y(t3,t4)' T_S Y(t5,t6) * Y(t5,t6)' T_S Y(t1,t2)
double cyclic_product(const TraceContext& ctx, Eigen::Index i, const std::array<int, 6>& t) {
  const double p1 = ctx.ydot(i, t[0], t[1], i, t[2], t[3]);
  const double p2 = ctx.ydot(i, t[2], t[3], i, t[4], t[5]);
  const double p3 = ctx.ydot(i, t[4], t[5], i, t[0], t[1]);
  return p1 * p2 * p3;
}

}  // namespace

namespace detail {

double c1(const TraceContext& ctx, const std::optional<Subsample>& sub) {
  require_all_groups(ctx, 2, "C1");
  if (!sub) {
    double sum = 0.0;
    double denom = 0.0;
    for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
      const Eigen::Index n = ctx.group_size(i);
      for (Eigen::Index l1 = 1; l1 < n; ++l1) {
        for (Eigen::Index l2 = 0; l2 < l1; ++l2) {
          sum += ctx.ydot(i, l1, l2, i, l1, l2);
        }
      }
      denom += static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    }
    return sum / denom;
  }
  // per-group draws mirroring the pooled form: average of Y'TY / 2 over a*B
  const std::int64_t budget = sub->budget;
  double total = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const Eigen::Index n = ctx.group_size(i);
    total += blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
      std::vector<int> scratch(static_cast<std::size_t>(n));
      std::iota(scratch.begin(), scratch.end(), 0);
      std::array<int, 2> pick{};
      double s = 0.0;
      for (std::int64_t b = lo; b < hi; ++b) {
        Rng rng = Rng::at(sub->seed, streams::kC1 + static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(b));
        rng.distinct_indices(pick, scratch);
        s += ctx.ydot(i, pick[0], pick[1], i, pick[0], pick[1]);
      }
      return s;
    });
  }
  return total / (2.0 * static_cast<double>(ctx.groups()) * static_cast<double>(budget));
}

double c2(const TraceContext& ctx, const std::optional<Subsample>& sub) {
  require_all_groups(ctx, 4, "C2");
  if (!sub) {
    double sum = 0.0;
    double pairs4 = 0.0;
    for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
      const Eigen::Index n = ctx.group_size(i);
      for (Eigen::Index l1 = 1; l1 < n; ++l1)
        for (Eigen::Index l2 = 0; l2 < l1; ++l2)
          for (Eigen::Index k1 = 1; k1 < n; ++k1) {
            if (k1 == l1 || k1 == l2) continue;
            for (Eigen::Index k2 = 0; k2 < k1; ++k2) {
              if (k2 == l1 || k2 == l2) continue;
              const double v = ctx.ydot(i, l1, l2, i, k1, k2);
              sum += v * v;
            }
          }
      pairs4 += comb4(static_cast<double>(n));
    }
    return sum / (4.0 * 6.0 * pairs4);
  }
  const std::int64_t budget = sub->budget;
  double total = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const Eigen::Index n = ctx.group_size(i);
    total += blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
      std::vector<int> scratch(static_cast<std::size_t>(n));
      std::iota(scratch.begin(), scratch.end(), 0);
      std::array<int, 4> pick{};
      double s = 0.0;
      for (std::int64_t b = lo; b < hi; ++b) {
        Rng rng = Rng::at(sub->seed, streams::kC2 + static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(b));
        rng.distinct_indices(pick, scratch);
        const double v = ctx.ydot(i, pick[0], pick[1], i, pick[2], pick[3]);
        s += v * v;
      }
      return s;
    });
  }
  return total / (4.0 * static_cast<double>(ctx.groups()) * static_cast<double>(budget));
}

double c3_exact(const TraceContext& ctx, std::int64_t term_cap) {
  require_all_groups(ctx, 6, "C3");
  double denom = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const double terms = perm6(static_cast<double>(ctx.group_size(i)));
    if (terms > static_cast<double>(term_cap)) {
      throw std::invalid_argument(
          "C3 exact enumeration needs " + std::to_string(static_cast<long long>(terms)) +
          " terms in group " + std::to_string(i + 1) + ", above the cap of " +
          std::to_string(term_cap) + "; use the subsampled estimator");
    }
    denom += terms;
  }

  double sum = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const auto tuples = ordered_6tuples(static_cast<int>(ctx.group_size(i)));
    const auto total = static_cast<std::int64_t>(tuples.size());
    sum += blocked_sum(total, kTupleBlock, [&](std::int64_t lo, std::int64_t hi) {
      double s = 0.0;
      for (std::int64_t m = lo; m < hi; ++m) {
        s += cyclic_product(ctx, i, tuples[static_cast<std::size_t>(m)]);
      }
      return s;
    });
  }
  return sum / (8.0 * denom);
}

double c3_subsampled(const TraceContext& ctx, std::int64_t budget, std::uint64_t seed) {
  require_all_groups(ctx, 6, "C3");
  if (budget < 1) throw std::invalid_argument("C3 subsampling budget must be >= 1");
  double total = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const Eigen::Index n = ctx.group_size(i);
    total += blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
      std::vector<int> scratch(static_cast<std::size_t>(n));
      std::iota(scratch.begin(), scratch.end(), 0);
      std::array<int, 6> pick{};
      double s = 0.0;
      for (std::int64_t b = lo; b < hi; ++b) {
        Rng rng = Rng::at(seed, streams::kC3 + static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(b));
        rng.distinct_indices(pick, scratch);
        s += cyclic_product(ctx, i, pick);
      }
      return s;
    });
  }
  return total / (8.0 * static_cast<double>(ctx.groups()) * static_cast<double>(budget));
}

}  // namespace detail

double estimate_c1(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                   const std::optional<Subsample>& sub) {
  return detail::c1(TraceContext(ds, pair, use_companion), sub);
}

double estimate_c2(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                   const std::optional<Subsample>& sub) {
  return detail::c2(TraceContext(ds, pair, use_companion), sub);
}

double estimate_c3_exact(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                         std::int64_t term_cap) {
  return detail::c3_exact(TraceContext(ds, pair, use_companion), term_cap);
}

double estimate_c3_subsampled(const Dataset& ds, const ProjectionPair& pair,
                              std::int64_t budget, std::uint64_t seed, bool use_companion) {
  return detail::c3_subsampled(TraceContext(ds, pair, use_companion), budget, seed);
}

}  // namespace hdrm
