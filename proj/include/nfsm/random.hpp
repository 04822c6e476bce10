#pragma once

// Deterministic instance generation.
//
// std::uniform_int_distribution and std::shuffle are implementation-defined, so the
// same seed would give different instances under libstdc++ and libc++. The
// generator and the bounded draw below are fully specified instead.

#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"

namespace nfsm {

/// SplitMix64 (Steele, Lea, Flood 2014). The name is recorded in experiment configs.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64-v1";
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  result_type operator()() {
    state_ += kGamma;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection of the biased low range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ValidationError("empty range");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  /// Child generator with an independent stream.
  SplitMix64 split() { return SplitMix64((*this)()); }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates, drawing indices from the back of the range.
template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

/// Seed of one experiment trial; depends only on its coordinates so any cell can be rerun alone.
inline std::uint64_t trial_seed(std::uint64_t base, int n, int cap, std::uint64_t trial) {
  std::uint64_t h = SplitMix64::mix(base + SplitMix64::kGamma);
  h = SplitMix64::mix(h ^ (static_cast<std::uint64_t>(n) + 2 * SplitMix64::kGamma));
  h = SplitMix64::mix(h ^ (static_cast<std::uint64_t>(cap) + 3 * SplitMix64::kGamma));
  h = SplitMix64::mix(h ^ (trial + 4 * SplitMix64::kGamma));
  return h;
}

/// Independent uniform preference permutations; every capacity equals cap.
inline SfInstance random_instance(int n, int cap, std::uint64_t seed) {
  if (n < 2) throw ValidationError("random_instance needs n >= 2");
  if (cap < 1 || cap > n - 1) throw ValidationError("random_instance needs 1 <= cap <= n-1");
  SplitMix64 rng(seed);
  std::vector<std::vector<AgentId>> prefs(n);
  for (AgentId i = 0; i < n; ++i) {
    auto& li = prefs[i];
    li.reserve(n - 1);
    for (AgentId j = 0; j < n; ++j) {
      if (j != i) li.push_back(j);
    }
    shuffle(li, rng);
  }
  return SfInstance(std::move(prefs), std::vector<int>(n, cap));
}

/// Capacity-1 instance made of directed preference triangles: in each triple
/// (3k, 3k+1, 3k+2) every agent ranks its successor first and everyone else after
/// it in index order. Every GSP has exactly n/3 odd cycles of length 3.
inline SfInstance hard_family(int n) {
  if (n < 3 || n % 3 != 0) throw ValidationError("hard_family needs a positive multiple of 3");
  std::vector<std::vector<AgentId>> prefs(n);
  for (AgentId i = 0; i < n; ++i) {
    const AgentId succ = 3 * (i / 3) + (i % 3 + 1) % 3;
    prefs[i].push_back(succ);
    for (AgentId j = 0; j < n; ++j) {
      if (j != i && j != succ) prefs[i].push_back(j);
    }
  }
  return SfInstance(std::move(prefs), std::vector<int>(n, 1));
}

}  // namespace nfsm
