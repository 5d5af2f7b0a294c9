#pragma once

#include "hdrm/dataset.hpp"
#include "hdrm/hypotheses.hpp"
#include "hdrm/trace_context.hpp"

namespace hdrm {

/// One-group unbiased estimates of tr(T S), tr((T S)^2), tr((T S)^3) for the
/// covariance S, valid under the null T mu = 0.
struct SingleTraces {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Mean quadratic form (1/N) sum x' T x.
double estimate_a1(const Dataset& ds, const ProjectionPair& pair, bool use_companion = true);

/// Mean squared cross form over unordered pairs; requires N >= 2.
double estimate_a2(const Dataset& ds, const ProjectionPair& pair, bool use_companion = true);

/// Mean cyclic triple product over unordered triples; requires N >= 3.
double estimate_a3(const Dataset& ds, const ProjectionPair& pair, bool use_companion = true);

/// All three from one Gram computation.
SingleTraces estimate_single_traces(const Dataset& ds, const ProjectionPair& pair,
                                    bool use_companion = true);

namespace detail {
SingleTraces single_traces(const TraceContext& ctx);
}

}  // namespace hdrm
