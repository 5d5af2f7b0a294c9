#include "hdrm/hypotheses.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace hdrm {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Matrix scaled_ones(Eigen::Index d) {
  return Matrix::Constant(d, d, 1.0 / static_cast<double>(d));
}

// Assembles the pair; companions come from the factor eigenvectors.
ProjectionPair finish(Matrix tw, Matrix ts, std::string label) {
  ProjectionPair pair;
  pair.tw = std::move(tw);
  pair.ts = std::move(ts);
  pair.label = std::move(label);
  pair.rank_w = projector_rank(pair.tw);
  pair.rank_s = projector_rank(pair.ts);
  if (pair.rank_w == 0 || pair.rank_s == 0) {
    throw std::invalid_argument(
        "hypothesis: projector has rank 0; statistic is degenerate");
  }
  pair.lw = companion(pair.tw).l;
  pair.ls = companion(pair.ts).l;
  return pair;
}

}  // namespace

Hypothesis hypothesis_from_name(const std::string& name) {
  const std::string s = to_lower(name);
  if (s == "flat") return Hypothesis::Flat;
  if (s == "whole") return Hypothesis::Whole;
  if (s == "sub") return Hypothesis::Sub;
  if (s == "interaction") return Hypothesis::Interaction;
  if (s == "identical") return Hypothesis::Identical;
  if (s == "custom") return Hypothesis::Custom;
  throw std::invalid_argument("unknown hypothesis name: " + name);
}

ProjectionPair build_single(Hypothesis kind, Eigen::Index d) {
  if (kind != Hypothesis::Flat) {
    throw std::invalid_argument(
        "build_single: only the flat hypothesis is predefined for one group");
  }
  if (d < 2) throw std::invalid_argument("build_single: flat requires d >= 2");
  return finish(Matrix::Identity(1, 1), centering_matrix(d), "flat");
}

ProjectionPair build_custom_single(const Matrix& ts, double tolerance) {
  if (ts.rows() != ts.cols() || ts.size() == 0) {
    throw std::invalid_argument("custom hypothesis matrix must be square");
  }
  ProjectionCheck check = validate_projection(ts, tolerance);
  ProjectionPair pair = finish(Matrix::Identity(1, 1), ts, "custom");
  pair.valid_projection = check.ok();
  pair.max_deviation = std::max(check.max_asymmetry, check.max_idempotence);
  return pair;
}

ProjectionPair build_grouped(Hypothesis kind, Eigen::Index a, Eigen::Index d) {
  switch (kind) {
    case Hypothesis::Whole:
      if (a < 2) throw std::invalid_argument("whole hypothesis requires a >= 2");
      return finish(centering_matrix(a), scaled_ones(d), "whole");
    case Hypothesis::Sub:
      if (d < 2) throw std::invalid_argument("sub hypothesis requires d >= 2");
      return finish(scaled_ones(a), centering_matrix(d), "sub");
    case Hypothesis::Interaction:
      if (a < 2 || d < 2) {
        throw std::invalid_argument("interaction hypothesis requires a >= 2 and d >= 2");
      }
      return finish(centering_matrix(a), centering_matrix(d), "interaction");
    case Hypothesis::Identical:
      if (a < 2) throw std::invalid_argument("identical hypothesis requires a >= 2");
      return finish(centering_matrix(a), Matrix::Identity(d, d), "identical");
    case Hypothesis::Flat:
      if (d < 2) throw std::invalid_argument("flat hypothesis requires d >= 2");
      return finish(Matrix::Identity(a, a), centering_matrix(d), "flat");
    case Hypothesis::Custom:
      throw std::invalid_argument(
          "custom grouped hypotheses need explicit T_W and T_S matrices");
  }
  throw std::invalid_argument("unreachable hypothesis kind");
}

ProjectionPair build_custom_grouped(const Matrix& tw, const Matrix& ts, double tolerance) {
  if (tw.rows() != tw.cols() || tw.size() == 0 || ts.rows() != ts.cols() ||
      ts.size() == 0) {
    throw std::invalid_argument("custom hypothesis factors must be square");
  }
  ProjectionCheck cw = validate_projection(tw, tolerance);
  ProjectionCheck cs = validate_projection(ts, tolerance);
  ProjectionPair pair = finish(tw, ts, "custom");
  pair.valid_projection = cw.ok() && cs.ok();
  pair.max_deviation = std::max({cw.max_asymmetry, cw.max_idempotence,
                                 cs.max_asymmetry, cs.max_idempotence});
  return pair;
}

}  // namespace hdrm
