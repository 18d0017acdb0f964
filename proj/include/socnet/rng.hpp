#pragma once

#include <array>
#include <cstdint>

namespace socnet {

/// SplitMix64 finalizer. Used to expand seeds and to derive independent
/// sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `stream` of `seed`: splitmix64(seed ^ splitmix64(stream + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random stream: xoshiro256** whose 256-bit state is filled
/// by four successive SplitMix64 outputs starting from the seed. The whole
/// pipeline uses only 64-bit integer arithmetic, so a seed produces the same
/// draws on every platform.
///
///   uniform()  = (next() >> 11) * 2^-53, in [0, 1)
///   below(n)   = Lemire multiply-shift with rejection, exact uniform on [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
};

}  // namespace socnet
