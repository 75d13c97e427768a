#pragma once

#include <cstdint>
#include <random>

namespace soblab {

// Seedable generator with portable output. mt19937_64 is specified bit-exactly
// by the C++ standard; the floating-point draws below are built directly from
// the raw 64-bit stream (std::uniform_real_distribution is implementation
// defined and would break cross-platform reproducibility of corpora).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0,1), 53 bits of randomness
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // inclusive range; modulo bias is irrelevant here and keeps the map portable
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  int sign() { return (eng_() & 1u) ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace soblab
