#pragma once

#include <cstdint>
#include <random>

namespace sagnac {

/// Mix a counter into a seed. Splitmix64 finalizer; the same (seed, index)
/// always yields the same value on every platform.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Deterministic Gaussian sampler: Box-Muller over mt19937_64, with the
/// transform spelled out here so draws do not depend on any standard-library
/// distribution internals. The same seed always yields the same sequence.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  /// One standard normal draw.
  double next();

 private:
  double uniform_open();  // (0, 1]

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sagnac
