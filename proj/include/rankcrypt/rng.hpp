#pragma once

#include <cstdint>
#include <random>

namespace rankcrypt {

/// Seeded generator with a platform-independent `below`. Standard library
/// distributions are implementation defined, so they are avoided here to keep
/// seeded output identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace rankcrypt
