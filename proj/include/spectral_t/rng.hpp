#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace spectral_t {

// (seed, stream) fully determines a sampler's output. Sweeps use the trial
// index as stream so trials can run in any order.
struct Seed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// mt19937_64 keyed by splitmix64(seed, stream). Only the raw engine output is
// consumed, so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(Seed s) {
    std::uint64_t state = s.seed;
    const std::uint64_t a = detail::splitmix64(state);
    state ^= s.stream * 0xd1b54a32d192ed03ULL;
    const std::uint64_t b = detail::splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // First `take` entries of a uniform random permutation of [0, size)
  // (partial Fisher-Yates).
  std::vector<std::uint64_t> sample_indices(std::uint64_t size, std::uint64_t take) {
    std::vector<std::uint64_t> idx(size);
    for (std::uint64_t i = 0; i < size; ++i) idx[i] = i;
    for (std::uint64_t i = 0; i < take && i < size; ++i) {
      const std::uint64_t j = i + below(size - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(std::min(take, size));
    return idx;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spectral_t
