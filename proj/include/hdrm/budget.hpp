#pragma once

#include <cstdint>
#include <string>

namespace hdrm {

/// Subsample count, either a literal ("20000") or a multiple of the total
/// sample size ("1000*N", the default).
struct SubsampleBudget {
  std::int64_t literal = 0;  // used when > 0
  std::int64_t coeff = 1000; // multiplier of N otherwise

  static SubsampleBudget parse(const std::string& text);
  std::int64_t resolve(std::int64_t n_total) const;
  std::string str() const;
};

}  // namespace hdrm
