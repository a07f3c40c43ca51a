#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace laplan {

// Seedable RNG with portable derived draws. std::mt19937_64 produces the
// same raw stream on every conforming implementation, but the standard
// distributions do not, so bounded ints / unit doubles / shuffles are
// implemented here directly and traces stay reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t n) {
    assert(n > 0);
    const std::uint64_t zone = (UINT64_MAX / n) * n;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r < zone) return r % n;
    }
  }

  int next_index(std::size_t n) {
    return static_cast<int>(next_below(static_cast<std::uint64_t>(n)));
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace laplan
