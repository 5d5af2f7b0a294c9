#include "hdrm/engine.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hdrm/distributions.hpp"
#include "hdrm/estimators_homog.hpp"
#include "hdrm/estimators_multi.hpp"
#include "hdrm/estimators_single.hpp"
#include "hdrm/trace_context.hpp"

namespace hdrm {

namespace {

// f estimate from the second and third trace, clamped into [1, kMax].
double degrees_of_freedom(double tr2, double tr3, TestResult& result) {
  if (std::fabs(tr3) < 1e-12 * std::pow(tr2, 1.5)) {
    result.third_trace_degenerate = true;
    return kMaxDegreesOfFreedom;
  }
  double f = (tr2 * tr2 * tr2) / (tr3 * tr3);
  if (f < 1.0) {
    result.f_clamped = true;
    return 1.0;
  }
  return std::min(f, kMaxDegreesOfFreedom);
}

void finalize(TestResult& result, double q, double expectation, double variance,
              double tr2, double tr3, double data_scale) {
  // projected variation below rounding noise relative to the data's own
  // magnitude means T annihilates the data; W would be meaningless
  const double floor = 1e-14 * data_scale;
  if (!(std::sqrt(std::max(variance, 0.0) / 2.0) > floor) || !std::isfinite(variance)) {
    throw std::runtime_error(
        "degenerate variance estimate; the data carry no variation under T");
  }
  result.statistic_w = (q - expectation) / std::sqrt(variance);
  if (!std::isfinite(result.statistic_w)) {
    throw std::runtime_error("test statistic is not finite; data are degenerate");
  }
  result.f_hat = degrees_of_freedom(tr2, tr3, result);
  result.tau_hat = 1.0 / result.f_hat;
  result.p_value = pearson_pvalue(result.statistic_w, result.f_hat);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// mean squared observation norm, the reference magnitude for degeneracy checks
double data_scale(const Dataset& ds) {
  double ss = 0.0;
  for (const auto& block : ds.observations) ss += block.squaredNorm();
  return ss / static_cast<double>(ds.total());
}

}  // namespace

std::vector<std::string> TestResult::warnings() const {
  std::vector<std::string> w;
  if (projection_warning) {
    w.push_back("supplied hypothesis matrix is not a valid projection matrix; "
                "the test may be invalid");
  }
  if (f_clamped) {
    w.push_back("estimated degrees of freedom fell below 1 and were clamped to 1");
  }
  if (third_trace_degenerate) {
    w.push_back("estimated third trace is numerically zero; degrees of freedom "
                "capped at the normal-limit ceiling");
  }
  if (removed_incomplete > 0) {
    w.push_back(std::to_string(removed_incomplete) +
                " incomplete subject(s) removed during preprocessing");
  }
  return w;
}

QStatistic q_statistic(const Dataset& ds, const ProjectionPair& pair, bool use_companion) {
  if (ds.d != pair.dimension() || ds.groups() != pair.groups()) {
    throw std::invalid_argument("q_statistic: dataset shape does not match hypothesis");
  }
  QStatistic stat;
  const auto a = ds.groups();
  const double n_total = static_cast<double>(ds.total());
  Matrix means(ds.d, a);
  for (Eigen::Index i = 0; i < a; ++i) {
    means.col(i) = ds.observations[static_cast<std::size_t>(i)].rowwise().mean();
    stat.group_means.push_back(means.col(i));
    stat.weights.push_back(n_total / static_cast<double>(ds.group_size(i)));
  }
  Matrix cross;  // cross(i,r) = xbar_i' T_S xbar_r
  if (use_companion) {
    const Matrix scores = pair.ls * means;
    cross = scores.transpose() * scores;
  } else {
    cross = means.transpose() * (pair.ts * means);
  }
  double q = n_total * (pair.tw.array() * cross.array()).sum();
  if (pair.valid_projection && q < 0.0) q = 0.0;  // rounding guard for true projectors
  stat.q = q;
  return stat;
}

TestResult run_single(const Dataset& ds, const ProjectionPair& pair, bool am) {
  if (ds.groups() != 1 || pair.groups() != 1) {
    throw std::invalid_argument("run_single requires exactly one group");
  }
  if (ds.total() < 4) {
    throw std::invalid_argument("the one-group test requires N ≥ 4 subjects");
  }
  TestResult result;
  result.n_total = ds.total();
  result.dimension = ds.d;
  result.groups = 1;
  result.hypothesis_label = pair.label;
  result.removed_incomplete = ds.removed_incomplete;
  result.projection_warning = !pair.valid_projection;

  const TraceContext ctx(ds, pair, am);
  const SingleTraces traces = detail::single_traces(ctx);
  if (!std::isfinite(traces.a1) || !std::isfinite(traces.a2) || !std::isfinite(traces.a3)) {
    throw std::runtime_error("trace estimates are not finite; data are degenerate");
  }
  const double q = q_statistic(ds, pair, am).q;
  finalize(result, q, traces.a1, 2.0 * traces.a2, traces.a2, traces.a3, data_scale(ds));
  return result;
}

TestResult run_grouped(const Dataset& ds, const ProjectionPair& pair,
                       const GroupedOptions& opts) {
  if (ds.groups() < 2) {
    throw std::invalid_argument("run_grouped requires at least two groups");
  }
  for (Eigen::Index i = 0; i < ds.groups(); ++i) {
    if (ds.group_size(i) < 6) {
      throw std::invalid_argument(
          "the grouped test requires n_i ≥ 6 complete subjects per group (group " +
          std::to_string(i + 1) + " has " + std::to_string(ds.group_size(i)) + ")");
    }
  }
  TestResult result;
  result.n_total = ds.total();
  result.dimension = ds.d;
  result.groups = ds.groups();
  result.hypothesis_label = pair.label;
  result.cov_equal = opts.cov_equal;
  result.subsampling = opts.subsampling;
  result.removed_incomplete = ds.removed_incomplete;
  result.projection_warning = !pair.valid_projection;

  const std::int64_t budget = opts.budget.resolve(ds.total());
  const std::uint64_t seed = opts.seed ? *opts.seed : entropy_seed();
  result.budget_used = budget;
  result.seed = seed;

  const TraceContext ctx(ds, pair, opts.am);
  const std::optional<Subsample> pair_sub =
      opts.subsampling ? std::optional<Subsample>(Subsample{budget, seed}) : std::nullopt;
  const double q = q_statistic(ds, pair, opts.am).q;

  if (opts.cov_equal) {
    const double c1 = detail::c1(ctx, pair_sub);
    const double c2 = detail::c2(ctx, pair_sub);
    const double c3 = detail::c3_subsampled(ctx, budget, seed);
    if (!(c2 > 0.0)) {
      throw std::runtime_error("degenerate variance estimate: C2 ≤ 0");
    }
    double diag_w = 0.0, sq_w = 0.0;
    for (Eigen::Index i = 0; i < ctx.groups(); ++i) {
      diag_w += ctx.weight(i) * ctx.tw()(i, i);
      for (Eigen::Index r = 0; r < ctx.groups(); ++r) {
        const double t = ctx.tw()(i, r);
        sq_w += ctx.weight(i) * ctx.weight(r) * t * t;
      }
    }
    finalize(result, q, c1 * diag_w, 2.0 * c2 * sq_w, c2, c3, data_scale(ds));
  } else {
    const double b2 = detail::b2(ctx, pair_sub);
    const double b5 = detail::b5(ctx, pair_sub);
    if (!(b5 > 0.0)) {
      throw std::runtime_error("degenerate variance estimate: B5 ≤ 0");
    }
    const double b6 = detail::b6_subsampled(ctx, budget, seed);
    finalize(result, q, b2, 2.0 * b5, b5, b6, data_scale(ds));
  }
  return result;
}

}  // namespace hdrm
