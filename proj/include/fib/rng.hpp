#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace fib {

using Integer = mpz_class;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Seedable 64-bit generator. Every randomized procedure takes one of these
/// explicitly; identical seeds give identical results. split() derives an
/// independent stream, used by batch drivers (one stream per run).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(detail::splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
        return dist(eng_);
    }

    /// Uniform Integer in [0, n), n > 0, by rejection on the top chunk.
    Integer below(const Integer& n) {
        const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        while (true) {
            Integer r = 0;
            std::size_t filled = 0;
            while (filled < bits) {
                r <<= 64;
                r += Integer(static_cast<unsigned long>(next() >> 32)) << 32 |
                     Integer(static_cast<unsigned long>(next() & 0xffffffffULL));
                filled += 64;
            }
            r >>= (filled - bits);
            if (r < n) return r;
        }
    }

    /// Uniform Integer in [lo, hi] inclusive.
    Integer between(const Integer& lo, const Integer& hi) {
        return lo + below(Integer(hi - lo + 1));
    }

    Rng split(std::uint64_t stream) const {
        return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(stream + 0x51ed2701)));
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace fib
