#pragma once

#include <cstdint>
#include <limits>

namespace mgarena {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of trajectory `index` under a global seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t index);

// Counter-based generator: the n-th output is mix64(key + (n+1)*golden), so any
// position of the stream can be reached without replaying it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform in [0,1) with 53 random bits.
  double uniform();
  // Uniform integer in [0,n), n > 0, rejection sampled.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p);
  // Standard normal via Box-Muller; consumes two outputs per call.
  double normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace mgarena
