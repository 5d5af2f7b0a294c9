#include "hdrm/estimators_single.hpp"

#include <stdexcept>

namespace hdrm {

namespace {

void require_single_group(const Dataset& ds) {
  if (ds.groups() != 1) {
    throw std::invalid_argument("one-group estimator called on a multi-group dataset");
  }
}

// sum over unordered triples of G(i,j) G(j,k) G(k,i), entries off-diagonal:
// equals tr(G0^3)/6 with G0 = G minus its diagonal.
double cyclic_triple_sum(const Matrix& gram) {
  Matrix g0 = gram;
  g0.diagonal().setZero();
  return (g0 * g0 * g0).trace() / 6.0;
}

}  // namespace

namespace detail {

SingleTraces single_traces(const TraceContext& ctx) {
  const Matrix& gram = ctx.gram(0);
  const Eigen::Index n = gram.rows();
  if (n < 3) throw std::invalid_argument("A3 requires at least 3 subjects");
  SingleTraces t;
  t.a1 = gram.trace() / static_cast<double>(n);
  double pair_sq = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      pair_sq += gram(j, k) * gram(j, k);
    }
  }
  const double n_d = static_cast<double>(n);
  const double pairs = n_d * (n_d - 1.0) / 2.0;
  const double triples = n_d * (n_d - 1.0) * (n_d - 2.0) / 6.0;
  t.a2 = pair_sq / pairs;
  t.a3 = cyclic_triple_sum(gram) / triples;
  return t;
}

}  // namespace detail

double estimate_a1(const Dataset& ds, const ProjectionPair& pair, bool use_companion) {
  require_single_group(ds);
  TraceContext ctx(ds, pair, use_companion);
  return ctx.gram(0).trace() / static_cast<double>(ds.total());
}

double estimate_a2(const Dataset& ds, const ProjectionPair& pair, bool use_companion) {
  require_single_group(ds);
  if (ds.total() < 2) throw std::invalid_argument("A2 requires at least 2 subjects");
  TraceContext ctx(ds, pair, use_companion);
  const Matrix& gram = ctx.gram(0);
  const Eigen::Index n = gram.rows();
  double pair_sq = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      pair_sq += gram(j, k) * gram(j, k);
    }
  }
  const double n_d = static_cast<double>(n);
  return pair_sq / (n_d * (n_d - 1.0) / 2.0);
}

double estimate_a3(const Dataset& ds, const ProjectionPair& pair, bool use_companion) {
  require_single_group(ds);
  if (ds.total() < 3) throw std::invalid_argument("A3 requires at least 3 subjects");
  TraceContext ctx(ds, pair, use_companion);
  const double n_d = static_cast<double>(ds.total());
  return cyclic_triple_sum(ctx.gram(0)) / (n_d * (n_d - 1.0) * (n_d - 2.0) / 6.0);
}

SingleTraces estimate_single_traces(const Dataset& ds, const ProjectionPair& pair,
                                    bool use_companion) {
  require_single_group(ds);
  TraceContext ctx(ds, pair, use_companion);
  return detail::single_traces(ctx);
}

}  // namespace hdrm
