#include "hdrm/estimators_multi.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "estimator_kernels.hpp"
#include "hdrm/reduction.hpp"
#include "hdrm/rng.hpp"

namespace hdrm {

namespace {

using detail::comb2;
using detail::comb4;
using detail::kDrawBlock;
using detail::kTupleBlock;
using detail::ordered_6tuples;
using detail::perm6;
using detail::require_group_size;

// Nonzero entries of T_W with the N/sqrt(n_i n_r) scaling of the stacked
// difference vectors baked in.
struct WeightedPairs {
  struct Entry {
    Eigen::Index i, r;
    double w;
  };
  std::vector<Entry> entries;

  explicit WeightedPairs(const TraceContext& ctx) {
    const Matrix& tw = ctx.tw();
    for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
      for (Eigen::Index r = 0; r < ctx.groups(); ++r) {
        const double t = tw(i, r);
        if (t != 0.0) {
          const double scale =
              ctx.n_total() / std::sqrt(static_cast<double>(ctx.group_size(i)) *
                                        static_cast<double>(ctx.group_size(r)));
          entries.push_back({i, r, t * scale});
        }
      }
    }
  }
};

// Z'(pair slots sa) T Z(pair slots sb) for the joint tuple; tuple[i] points
// at group i's 6 indices.
double lambda_form(const TraceContext& ctx, const WeightedPairs& wp,
                   const std::array<int, 6>* const* tuple, int sa, int sb) {
  double sum = 0.0;
  for (const auto& e : wp.entries) {
    const auto& ti = *tuple[e.i];
    const auto& tr = *tuple[e.r];
    sum += e.w * ctx.ydot(e.i, ti[static_cast<std::size_t>(sa)],
                          ti[static_cast<std::size_t>(sa + 1)], e.r,
                          tr[static_cast<std::size_t>(sb)],
                          tr[static_cast<std::size_t>(sb + 1)]);
  }
  return sum;
}

}  // namespace

namespace detail {

double b_i1(const TraceContext& ctx, Eigen::Index i, const std::optional<Subsample>& sub) {
  require_group_size(ctx, i, 2, "B_i1");
  const Eigen::Index n = ctx.group_size(i);
  if (!sub) {
    double sum = 0.0;
    for (Eigen::Index l1 = 1; l1 < n; ++l1) {
      for (Eigen::Index l2 = 0; l2 < l1; ++l2) {
        sum += ctx.ydot(i, l1, l2, i, l1, l2);
      }
    }
    return sum / (2.0 * comb2(static_cast<double>(n)));
  }
  const std::int64_t budget = sub->budget;
  const double sum = blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> scratch(static_cast<std::size_t>(n));
    std::iota(scratch.begin(), scratch.end(), 0);
    std::array<int, 2> pick{};
    double s = 0.0;
    for (std::int64_t b = lo; b < hi; ++b) {
      Rng rng = Rng::at(sub->seed, streams::kBi1 + static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(b));
      rng.distinct_indices(pick, scratch);
      s += ctx.ydot(i, pick[0], pick[1], i, pick[0], pick[1]);
    }
    return s;
  });
  return sum / (2.0 * static_cast<double>(budget));
}

double b2(const TraceContext& ctx, const std::optional<Subsample>& sub) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    sum += ctx.weight(i) * ctx.tw()(i, i) * b_i1(ctx, i, sub);
  }
  return sum;
}

double b_ir3(const TraceContext& ctx, Eigen::Index i, Eigen::Index r,
             const std::optional<Subsample>& sub) {
  if (i == r) {
    throw std::invalid_argument("B_ir3 needs two distinct groups; use B_i4 within a group");
  }
  require_group_size(ctx, i, 2, "B_ir3");
  require_group_size(ctx, r, 2, "B_ir3");
  const Eigen::Index ni = ctx.group_size(i);
  const Eigen::Index nr = ctx.group_size(r);
  if (!sub) {
    double sum = 0.0;
    for (Eigen::Index l1 = 1; l1 < ni; ++l1)
      for (Eigen::Index l2 = 0; l2 < l1; ++l2)
        for (Eigen::Index k1 = 1; k1 < nr; ++k1)
          for (Eigen::Index k2 = 0; k2 < k1; ++k2) {
            const double v = ctx.ydot(i, l1, l2, r, k1, k2);
            sum += v * v;
          }
    return sum / (4.0 * comb2(static_cast<double>(ni)) * comb2(static_cast<double>(nr)));
  }
  const std::int64_t budget = sub->budget;
  const std::uint64_t stream = streams::kBir3 + static_cast<std::uint64_t>(i) * 256u +
                               static_cast<std::uint64_t>(r);
  const double sum = blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> scratch_i(static_cast<std::size_t>(ni));
    std::vector<int> scratch_r(static_cast<std::size_t>(nr));
    std::iota(scratch_i.begin(), scratch_i.end(), 0);
    std::iota(scratch_r.begin(), scratch_r.end(), 0);
    std::array<int, 2> pi{}, pr{};
    double s = 0.0;
    for (std::int64_t b = lo; b < hi; ++b) {
      Rng rng = Rng::at(sub->seed, stream, static_cast<std::uint64_t>(b));
      rng.distinct_indices(pi, scratch_i);
      rng.distinct_indices(pr, scratch_r);
      const double v = ctx.ydot(i, pi[0], pi[1], r, pr[0], pr[1]);
      s += v * v;
    }
    return s;
  });
  return sum / (4.0 * static_cast<double>(budget));
}

double b_i4(const TraceContext& ctx, Eigen::Index i, const std::optional<Subsample>& sub) {
  require_group_size(ctx, i, 4, "B_i4");
  const Eigen::Index n = ctx.group_size(i);
  if (!sub) {
    // ordered pairs of disjoint unordered pairs: 6 * C(n,4) terms
    double sum = 0.0;
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
    return sum / (4.0 * 6.0 * comb4(static_cast<double>(n)));
  }
  const std::int64_t budget = sub->budget;
  const double sum = blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> scratch(static_cast<std::size_t>(n));
    std::iota(scratch.begin(), scratch.end(), 0);
    std::array<int, 4> pick{};
    double s = 0.0;
    for (std::int64_t b = lo; b < hi; ++b) {
      Rng rng = Rng::at(sub->seed, streams::kBi4 + static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(b));
      rng.distinct_indices(pick, scratch);
      const double v = ctx.ydot(i, pick[0], pick[1], i, pick[2], pick[3]);
      s += v * v;
    }
    return s;
  });
  return sum / (4.0 * static_cast<double>(budget));
}

double b5(const TraceContext& ctx, const std::optional<Subsample>& sub) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    const double wi = ctx.weight(i) * ctx.tw()(i, i);
    sum += wi * wi * b_i4(ctx, i, sub);
  }
  for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
    for (Eigen::Index r = 0; r < i; ++r) {
      const double t = ctx.tw()(i, r);
      if (t == 0.0) continue;  // diagonal T_W: no cross terms to estimate
      const double w = ctx.n_total() * ctx.n_total() /
                       (static_cast<double>(ctx.group_size(i)) *
                        static_cast<double>(ctx.group_size(r)));
      sum += 2.0 * w * t * t * b_ir3(ctx, i, r, sub);
    }
  }
  return sum;
}

double b6_exact(const TraceContext& ctx, std::int64_t term_cap) {
  const Eigen::Index a = ctx.groups();
  double joint = 1.0;
  for (Eigen::Index i = 0; i < a; ++i) {
    require_group_size(ctx, i, 6, "B6");
    joint *= perm6(static_cast<double>(ctx.group_size(i)));
  }
  if (joint > static_cast<double>(term_cap)) {
    throw std::invalid_argument(
        "B6 exact enumeration needs " + std::to_string(static_cast<long long>(joint)) +
        " terms, above the cap of " + std::to_string(term_cap) +
        "; use the subsampled estimator");
  }

  std::vector<std::vector<std::array<int, 6>>> tuples;
  tuples.reserve(static_cast<std::size_t>(a));
  for (Eigen::Index i = 0; i < a; ++i) {
    tuples.push_back(ordered_6tuples(static_cast<int>(ctx.group_size(i))));
  }
  const WeightedPairs wp(ctx);
  const auto total = static_cast<std::int64_t>(joint);

  const double sum = blocked_sum(total, kTupleBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<const std::array<int, 6>*> tuple(static_cast<std::size_t>(a));
    double s = 0.0;
    for (std::int64_t m = lo; m < hi; ++m) {
      // mixed-radix decode of the joint tuple index
      std::int64_t rem = m;
      for (Eigen::Index i = 0; i < a; ++i) {
        const auto& list = tuples[static_cast<std::size_t>(i)];
        const auto size = static_cast<std::int64_t>(list.size());
        tuple[static_cast<std::size_t>(i)] = &list[static_cast<std::size_t>(rem % size)];
        rem /= size;
      }
      const double l1 = lambda_form(ctx, wp, tuple.data(), 0, 2);
      const double l2 = lambda_form(ctx, wp, tuple.data(), 2, 4);
      const double l3 = lambda_form(ctx, wp, tuple.data(), 4, 0);
      s += l1 * l2 * l3;
    }
    return s;
  });
  return sum / (8.0 * joint);
}

double b6_subsampled(const TraceContext& ctx, std::int64_t budget, std::uint64_t seed) {
  const Eigen::Index a = ctx.groups();
  for (Eigen::Index i = 0; i < a; ++i) require_group_size(ctx, i, 6, "B6");
  if (budget < 1) throw std::invalid_argument("B6 subsampling budget must be >= 1");
  const WeightedPairs wp(ctx);

  const double sum = blocked_sum(budget, kDrawBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<std::vector<int>> scratch;
    scratch.reserve(static_cast<std::size_t>(a));
    for (Eigen::Index i = 0; i < a; ++i) {
      std::vector<int> sc(static_cast<std::size_t>(ctx.group_size(i)));
      std::iota(sc.begin(), sc.end(), 0);
      scratch.push_back(std::move(sc));
    }
    std::vector<std::array<int, 6>> draw(static_cast<std::size_t>(a));
    std::vector<const std::array<int, 6>*> tuple(static_cast<std::size_t>(a));
    for (Eigen::Index i = 0; i < a; ++i) {
      tuple[static_cast<std::size_t>(i)] = &draw[static_cast<std::size_t>(i)];
    }
    double s = 0.0;
    for (std::int64_t b = lo; b < hi; ++b) {
      Rng rng = Rng::at(seed, streams::kB6, static_cast<std::uint64_t>(b));
      for (Eigen::Index i = 0; i < a; ++i) {
        rng.distinct_indices(draw[static_cast<std::size_t>(i)],
                             scratch[static_cast<std::size_t>(i)]);
      }
      const double l1 = lambda_form(ctx, wp, tuple.data(), 0, 2);
      const double l2 = lambda_form(ctx, wp, tuple.data(), 2, 4);
      const double l3 = lambda_form(ctx, wp, tuple.data(), 4, 0);
      s += l1 * l2 * l3;
    }
    return s;
  });
  return sum / (8.0 * static_cast<double>(budget));
}

}  // namespace detail

double estimate_b_i1(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                     bool use_companion, const std::optional<Subsample>& sub) {
  return detail::b_i1(TraceContext(ds, pair, use_companion), i, sub);
}

double estimate_b2(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                   const std::optional<Subsample>& sub) {
  return detail::b2(TraceContext(ds, pair, use_companion), sub);
}

double estimate_b_ir3(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                      Eigen::Index r, bool use_companion,
                      const std::optional<Subsample>& sub) {
  return detail::b_ir3(TraceContext(ds, pair, use_companion), i, r, sub);
}

double estimate_b_i4(const Dataset& ds, const ProjectionPair& pair, Eigen::Index i,
                     bool use_companion, const std::optional<Subsample>& sub) {
  return detail::b_i4(TraceContext(ds, pair, use_companion), i, sub);
}

double estimate_b5(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                   const std::optional<Subsample>& sub) {
  return detail::b5(TraceContext(ds, pair, use_companion), sub);
}

double estimate_b6_exact(const Dataset& ds, const ProjectionPair& pair, bool use_companion,
                         std::int64_t term_cap) {
  return detail::b6_exact(TraceContext(ds, pair, use_companion), term_cap);
}

double estimate_b6_subsampled(const Dataset& ds, const ProjectionPair& pair,
                              std::int64_t budget, std::uint64_t seed, bool use_companion) {
  return detail::b6_subsampled(TraceContext(ds, pair, use_companion), budget, seed);
}

}  // namespace hdrm
