#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdrm/linalg.hpp"

namespace hdrm {

/// Canonical ingested data: d-dimensional observation vectors partitioned
/// into groups. Group labels are sorted lexicographically so the layout is
/// deterministic regardless of input order; within a group, subjects keep
/// their order of first appearance.
struct Dataset {
  Eigen::Index d = 0;
  std::vector<std::string> group_labels;
  std::vector<Matrix> observations;  // per group: d x n_i, one subject per column
  int removed_incomplete = 0;

  Eigen::Index groups() const { return static_cast<Eigen::Index>(observations.size()); }
  Eigen::Index group_size(Eigen::Index i) const {
    return observations[static_cast<std::size_t>(i)].cols();
  }
  Eigen::Index total() const {
    Eigen::Index n = 0;
    for (const auto& g : observations) n += g.cols();
    return n;
  }
};

/// Long-format records: one measurement per row, tagged with a subject and
/// optionally a group label.
struct LongTable {
  std::vector<double> values;
  std::vector<std::string> subjects;
  std::vector<std::string> groups;  // empty => single group
};

/// Wide ingestion: one subject per column. A column with any non-finite
/// entry is dropped and counted. `group_of_column`, when present, must have
/// one label per column.
Dataset from_wide(const Matrix& data,
                  const std::vector<std::string>* group_of_column = nullptr);

/// Long ingestion: groups measurements by subject (within-subject order =
/// appearance order). The dimension is the modal per-subject record count;
/// subjects with a different count or non-finite values are dropped and
/// counted. A subject carrying two group labels is an error.
Dataset from_long(const LongTable& table);

/// Inverse of from_wide for complete data; columns ordered group by group.
Matrix to_wide(const Dataset& ds);

/// Group labels aligned with to_wide's columns.
std::vector<std::string> wide_labels(const Dataset& ds);

}  // namespace hdrm
