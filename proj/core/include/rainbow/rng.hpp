#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace rainbow {

/// splitmix64 generator. std::uniform_int_distribution is implementation
/// defined, so all seeded behaviour in the library goes through this to keep
/// outputs reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound). bound = 0 returns 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // rejection sampling over the top of the range
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int range(int lo, int hi) {  // inclusive lo, exclusive hi
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo)));
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    shuffle(p);
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rainbow
