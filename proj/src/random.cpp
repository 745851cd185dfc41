#include "sagnac/random.hpp"

#include <cmath>
#include <numbers>

namespace sagnac {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double GaussianSampler::uniform_open() {
  // 53 random bits; map to (0, 1] so the log below is always finite.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 1.0 - u;
}

double GaussianSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  const double theta = 2.0 * std::numbers::pi * uniform_open();
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace sagnac
