#ifndef MAXRANK_RNG_HPP
#define MAXRANK_RNG_HPP

#include <cstdint>
#include <random>

namespace maxrank {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-trial / per-task seeds are derived from a master seed by counter so
// that results never depend on scheduling order.
inline uint64_t derive_seed(uint64_t master, uint64_t counter) {
    return splitmix64(master ^ splitmix64(counter + 1));
}

// Thin deterministic wrapper; uniform() avoids std::uniform_int_distribution
// so output is identical across standard library implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // uniform in [0, bound)
    uint64_t uniform(uint64_t bound) {
        // rejection sampling; bound is far below 2^63 in practice
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace maxrank

#endif
