#pragma once

#include <string>
#include <vector>

#include "hdrm/dataset.hpp"

namespace hdrm {

/// Headerless numeric matrix; "NA"/"NaN" (any case) parse as NaN.
Matrix read_matrix_csv(const std::string& path);

/// Long-format CSV with a header row; column names default to
/// value/subject/group. The group column is optional.
LongTable read_long_csv(const std::string& path,
                        const std::string& value_col = "value",
                        const std::string& subject_col = "subject",
                        const std::string& group_col = "group");

/// One label per line (or comma-separated on one line).
std::vector<std::string> read_labels_csv(const std::string& path);

}  // namespace hdrm
