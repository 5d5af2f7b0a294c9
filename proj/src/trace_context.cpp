#include "hdrm/trace_context.hpp"

#include <stdexcept>

namespace hdrm {

TraceContext::TraceContext(const Dataset& ds, const ProjectionPair& pair,
                           bool use_companion) {
  if (ds.d != pair.dimension()) {
    throw std::invalid_argument("trace context: dataset dimension does not match T_S");
  }
  if (ds.groups() != pair.groups()) {
    throw std::invalid_argument("trace context: group count does not match T_W");
  }
  a_ = ds.groups();
  n_total_ = static_cast<double>(ds.total());
  tw_ = &pair.tw;
  n_.reserve(static_cast<std::size_t>(a_));
  for (Eigen::Index i = 0; i < a_; ++i) n_.push_back(ds.group_size(i));

  std::vector<Matrix> scores;  // companion: L_S X_i; full path: X_i as-is
  scores.reserve(static_cast<std::size_t>(a_));
  for (Eigen::Index i = 0; i < a_; ++i) {
    const Matrix& x = ds.observations[static_cast<std::size_t>(i)];
    scores.push_back(use_companion ? Matrix(pair.ls * x) : x);
  }

  gram_.reserve(static_cast<std::size_t>(a_ * (a_ + 1) / 2));
  for (Eigen::Index i = 0; i < a_; ++i) {
    for (Eigen::Index r = i; r < a_; ++r) {
      if (use_companion) {
        gram_.push_back(scores[static_cast<std::size_t>(i)].transpose() *
                        scores[static_cast<std::size_t>(r)]);
      } else {
        gram_.push_back(scores[static_cast<std::size_t>(i)].transpose() *
                        (pair.ts * scores[static_cast<std::size_t>(r)]));
      }
    }
  }
}

}  // namespace hdrm
