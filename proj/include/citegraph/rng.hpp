#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace citegraph {

// Seeded random stream with portable derived draws. mt19937_64 output is
// bit-exact by the standard; std::uniform_*_distribution is not, so the
// conversions below are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1), 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform in [0,n) via rejection.
  std::uint64_t next_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_index: n must be positive");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t overhang = (max % n + 1) % n;  // 2^64 mod n
    if (overhang == 0) return engine_() % n;
    const std::uint64_t last_ok = max - overhang;
    std::uint64_t x = engine_();
    while (x > last_ok) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace citegraph
