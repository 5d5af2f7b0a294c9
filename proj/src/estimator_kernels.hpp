#pragma once

// Internal helpers shared by the difference-based trace estimators.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdrm/trace_context.hpp"

namespace hdrm::detail {

inline constexpr std::int64_t kDrawBlock = 2048;   // subsample draws per block
inline constexpr std::int64_t kTupleBlock = 8192;  // exact tuples per block

inline double comb2(double n) { return n * (n - 1.0) / 2.0; }
inline double comb4(double n) { return n * (n - 1.0) * (n - 2.0) * (n - 3.0) / 24.0; }

// n! / (n-6)!  (count of ordered 6-tuples of distinct indices)
inline double perm6(double n) {
  return n * (n - 1.0) * (n - 2.0) * (n - 3.0) * (n - 4.0) * (n - 5.0);
}

inline void require_group_size(const TraceContext& ctx, Eigen::Index i, Eigen::Index need,
                               const char* what) {
  if (ctx.group_size(i) < need) {
    throw std::invalid_argument(std::string(what) + " requires n_i ≥ " +
                                std::to_string(need) + " (group " + std::to_string(i + 1) +
                                " has " + std::to_string(ctx.group_size(i)) + ")");
  }
}

// All ordered 6-tuples of distinct indices from {0,..,n-1}.
inline std::vector<std::array<int, 6>> ordered_6tuples(int n) {
  std::vector<std::array<int, 6>> out;
  out.reserve(static_cast<std::size_t>(perm6(n)));
  std::array<int, 6> t{};
  for (t[0] = 0; t[0] < n; ++t[0])
    for (t[1] = 0; t[1] < n; ++t[1]) {
      if (t[1] == t[0]) continue;
      for (t[2] = 0; t[2] < n; ++t[2]) {
        if (t[2] == t[0] || t[2] == t[1]) continue;
        for (t[3] = 0; t[3] < n; ++t[3]) {
          if (t[3] == t[0] || t[3] == t[1] || t[3] == t[2]) continue;
          for (t[4] = 0; t[4] < n; ++t[4]) {
            if (t[4] == t[0] || t[4] == t[1] || t[4] == t[2] || t[4] == t[3]) continue;
            for (t[5] = 0; t[5] < n; ++t[5]) {
              if (t[5] == t[0] || t[5] == t[1] || t[5] == t[2] || t[5] == t[3] ||
                  t[5] == t[4])
                continue;
              out.push_back(t);
            }
          }
        }
      }
    }
  return out;
}

}  // namespace hdrm::detail
