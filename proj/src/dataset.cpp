#include "hdrm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace hdrm {

namespace {

Dataset assemble(Eigen::Index d,
                 const std::vector<std::string>& labels_in_order,
                 const std::map<std::string, std::vector<Vector>>& by_group,
                 int removed) {
  Dataset ds;
  ds.d = d;
  ds.removed_incomplete = removed;
  for (const auto& label : labels_in_order) {
    const auto& subjects = by_group.at(label);
    if (subjects.empty()) {
      throw std::runtime_error("group '" + label + "' has no complete subjects");
    }
    Matrix block(d, static_cast<Eigen::Index>(subjects.size()));
    for (std::size_t j = 0; j < subjects.size(); ++j) {
      block.col(static_cast<Eigen::Index>(j)) = subjects[j];
    }
    ds.group_labels.push_back(label);
    ds.observations.push_back(std::move(block));
  }
  return ds;
}

}  // namespace

Dataset from_wide(const Matrix& data, const std::vector<std::string>* group_of_column) {
  if (data.size() == 0) throw std::invalid_argument("from_wide: empty data matrix");
  const Eigen::Index n_subjects = data.cols();
  if (group_of_column != nullptr &&
      static_cast<Eigen::Index>(group_of_column->size()) != n_subjects) {
    throw std::invalid_argument(
        "from_wide: group vector length must equal the number of subjects (columns)");
  }

  std::map<std::string, std::vector<Vector>> by_group;
  if (group_of_column != nullptr) {
    for (const auto& g : *group_of_column) by_group[g];  // register every group
  } else {
    by_group["1"];
  }

  int removed = 0;
  for (Eigen::Index j = 0; j < n_subjects; ++j) {
    if (!data.col(j).allFinite()) {
      ++removed;
      continue;
    }
    const std::string& label =
        group_of_column ? (*group_of_column)[static_cast<std::size_t>(j)]
                        : std::string("1");
    by_group[label].push_back(data.col(j));
  }

  std::vector<std::string> labels;
  for (const auto& [label, _] : by_group) labels.push_back(label);  // map is sorted
  return assemble(data.rows(), labels, by_group, removed);
}

Dataset from_long(const LongTable& table) {
  const std::size_t n = table.values.size();
  if (n == 0) throw std::invalid_argument("from_long: empty table");
  if (table.subjects.size() != n) {
    throw std::invalid_argument("from_long: values and subjects must have equal length");
  }
  const bool has_groups = !table.groups.empty();
  if (has_groups && table.groups.size() != n) {
    throw std::invalid_argument("from_long: group vector must match the table length");
  }

  struct SubjectRecord {
    std::vector<double> values;
    std::string group;
  };
  std::vector<std::string> subject_order;
  std::unordered_map<std::string, SubjectRecord> records;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string& subj = table.subjects[r];
    const std::string group = has_groups ? table.groups[r] : std::string("1");
    auto it = records.find(subj);
    if (it == records.end()) {
      subject_order.push_back(subj);
      it = records.emplace(subj, SubjectRecord{{}, group}).first;
    } else if (it->second.group != group) {
      throw std::runtime_error("from_long: subject '" + subj +
                               "' appears in more than one group");
    }
    it->second.values.push_back(table.values[r]);
  }

  // dimension = modal per-subject record count (largest count on ties)
  std::map<std::size_t, int> count_freq;
  for (const auto& subj : subject_order) {
    ++count_freq[records.at(subj).values.size()];
  }
  std::size_t d = 0;
  int best = -1;
  for (const auto& [count, freq] : count_freq) {
    if (freq >= best) {
      best = freq;
      d = count;
    }
  }

  std::map<std::string, std::vector<Vector>> by_group;
  int removed = 0;
  for (const auto& subj : subject_order) {
    const auto& rec = records.at(subj);
    const bool complete =
        rec.values.size() == d &&
        std::all_of(rec.values.begin(), rec.values.end(),
                    [](double v) { return std::isfinite(v); });
    if (!complete) {
      ++removed;
      continue;
    }
    Vector x(static_cast<Eigen::Index>(d));
    for (std::size_t t = 0; t < d; ++t) x[static_cast<Eigen::Index>(t)] = rec.values[t];
    by_group[rec.group].push_back(std::move(x));
  }
  if (by_group.empty()) {
    throw std::runtime_error("from_long: no complete subjects after preprocessing");
  }

  std::vector<std::string> labels;
  for (const auto& [label, _] : by_group) labels.push_back(label);
  return assemble(static_cast<Eigen::Index>(d), labels, by_group, removed);
}

Matrix to_wide(const Dataset& ds) {
  Matrix out(ds.d, ds.total());
  Eigen::Index col = 0;
  for (const auto& block : ds.observations) {
    out.middleCols(col, block.cols()) = block;
    col += block.cols();
  }
  return out;
}

std::vector<std::string> wide_labels(const Dataset& ds) {
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < ds.groups(); ++i) {
    for (Eigen::Index j = 0; j < ds.group_size(i); ++j) {
      labels.push_back(ds.group_labels[static_cast<std::size_t>(i)]);
    }
  }
  return labels;
}

}  // namespace hdrm
