#pragma once

#include <cstdint>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace webbias {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent substream seed from a parent seed and an index.
/// All randomness in the toolkit flows from one top-level seed through this.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64_next(s);
  return splitmix64_next(s);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, then mixed with the parent seed.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return derive_seed(seed, h);
}

/// Small deterministic PRNG (splitmix64 stream). Implementation-defined
/// std::uniform_* distributions are avoided so that seeded runs are
/// byte-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Unbiased draw in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % bound;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Draws k distinct indices from [0, n) uniformly, via partial Fisher-Yates.
/// Result order is the draw order (not sorted).
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

/// Samples from a fixed discrete distribution by inverse CDF lookup.
class CumulativeSampler {
 public:
  explicit CumulativeSampler(const std::vector<double>& weights) {
    cum_.reserve(weights.size());
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("CumulativeSampler: negative weight");
      total += w;
      cum_.push_back(total);
    }
    if (cum_.empty() || total <= 0.0)
      throw std::invalid_argument("CumulativeSampler: empty or zero-mass distribution");
    total_ = total;
  }

  std::size_t pick(Rng& rng) const {
    double u = rng.unit() * total_;
    std::size_t lo = 0, hi = cum_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cum_[mid] <= u) lo = mid + 1; else hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> cum_;
  double total_ = 0.0;
};

}  // namespace webbias
