#include "hdrm/budget.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace hdrm {

namespace {

std::int64_t parse_positive_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("budget: empty integer");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("budget: cannot parse '" + s + "'");
  }
  if (pos != s.size() || v < 1) {
    throw std::invalid_argument("budget: expected a positive integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

SubsampleBudget SubsampleBudget::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("budget: empty expression");
  SubsampleBudget b;
  const std::size_t star = s.find('*');
  if (star == std::string::npos) {
    b.literal = parse_positive_int(s);
    b.coeff = 0;
    return b;
  }
  std::string lhs = s.substr(0, star);
  std::string rhs = s.substr(star + 1);
  if (rhs != "N" && rhs != "n") {
    throw std::invalid_argument("budget: expected '<int>' or '<int>*N', got '" + text + "'");
  }
  b.coeff = parse_positive_int(lhs);
  b.literal = 0;
  return b;
}

std::int64_t SubsampleBudget::resolve(std::int64_t n_total) const {
  const std::int64_t b = (literal > 0) ? literal : coeff * n_total;
  if (b < 1) throw std::invalid_argument("budget: resolved subsample count must be >= 1");
  return b;
}

std::string SubsampleBudget::str() const {
  if (literal > 0) return std::to_string(literal);
  return std::to_string(coeff) + "*N";
}

}  // namespace hdrm
