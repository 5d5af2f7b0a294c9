#include "hdrm/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hdrm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool is_missing_token(std::string t) {
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return t == "na" || t == "nan" || t.empty();
}

double parse_value(const std::string& token, const std::string& path) {
  if (is_missing_token(token)) return std::numeric_limits<double>::quiet_NaN();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": cannot parse numeric field '" + token + "'");
  }
  if (pos != token.size()) {
    throw std::runtime_error(path + ": cannot parse numeric field '" + token + "'");
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw std::runtime_error(path + ": file is empty");
  return lines;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  for (const auto& line : lines) {
    const auto fields = split_fields(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_value(f, path));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path + ": ragged rows in matrix CSV");
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

LongTable read_long_csv(const std::string& path, const std::string& value_col,
                        const std::string& subject_col, const std::string& group_col) {
  const auto lines = read_lines(path);
  const auto header = split_fields(lines.front());
  auto find_col = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int vi = find_col(value_col);
  const int si = find_col(subject_col);
  const int gi = find_col(group_col);
  if (vi < 0 || si < 0) {
    throw std::runtime_error(path + ": long CSV needs columns '" + value_col + "' and '" +
                             subject_col + "'");
  }
  LongTable table;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    const std::size_t needed =
        static_cast<std::size_t>(std::max({vi, si, gi < 0 ? 0 : gi})) + 1;
    if (fields.size() < needed) {
      throw std::runtime_error(path + ": row " + std::to_string(r + 1) +
                               " has too few fields");
    }
    table.values.push_back(parse_value(fields[static_cast<std::size_t>(vi)], path));
    table.subjects.push_back(fields[static_cast<std::size_t>(si)]);
    if (gi >= 0) table.groups.push_back(fields[static_cast<std::size_t>(gi)]);
  }
  if (table.values.empty()) throw std::runtime_error(path + ": no data rows");
  return table;
}

std::vector<std::string> read_labels_csv(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<std::string> labels;
  for (const auto& line : lines) {
    for (const auto& f : split_fields(line)) {
      if (!f.empty()) labels.push_back(f);
    }
  }
  if (labels.empty()) throw std::runtime_error(path + ": no labels found");
  return labels;
}

}  // namespace hdrm
