#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace hdrm {

/// Bit-mixing finalizer (splitmix64). Used both as a PRNG step and as a hash
/// for deriving independent substreams from (seed, stream, counter) keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Small sequential generator. Streams are derived counter-style: any work
/// item (replication, subsample draw) seeds its own generator from a key, so
/// results do not depend on thread count or execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  /// Generator for a (seed, stream) pair.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix64(mix64(seed) ^ mix64(stream_id + 0x1d8af066a9bc7d35ull)));
  }

  /// Generator for item `counter` of a (seed, stream) pair.
  static Rng at(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter) {
    std::uint64_t k = mix64(seed) ^ mix64(stream_id + 0x1d8af066a9bc7d35ull);
    return Rng(mix64(k ^ mix64(counter + 0x632be59bd9b4e019ull)));
  }

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1).
  double next_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Multiply-shift reduction; bias is below
  /// bound * 2^-64, irrelevant at statistical scales.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Standard normal via Box-Muller (one value per call, cached pair).
  double next_normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  /// k distinct indices from {0,..,n-1}, uniform over ordered k-tuples.
  /// Partial Fisher-Yates against a caller-provided scratch permutation of
  /// size n; the scratch is restored before returning, so it can be reused
  /// across draws without re-initialization.
  void distinct_indices(std::span<int> out, std::span<int> scratch) noexcept {
    const int k = static_cast<int>(out.size());
    const int n = static_cast<int>(scratch.size());
    std::array<int, 8> touched{};
    for (int j = 0; j < k; ++j) {
      int pick = j + static_cast<int>(next_below(static_cast<std::uint64_t>(n - j)));
      std::swap(scratch[j], scratch[pick]);
      out[j] = scratch[j];
      touched[static_cast<std::size_t>(j)] = pick;
    }
    for (int j = k - 1; j >= 0; --j) {
      std::swap(scratch[j], scratch[touched[static_cast<std::size_t>(j)]]);
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hdrm
