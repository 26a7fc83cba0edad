#ifndef MAXRANK_BINOMIAL_HPP
#define MAXRANK_BINOMIAL_HPP

#include <cstdint>
#include <stdexcept>

namespace maxrank {

// binom(n, k) in exact 64-bit arithmetic. Intermediate products stay exact
// because we divide after every factor (the running value is itself a
// binomial coefficient).
inline long long binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        if (r > (INT64_MAX - 1) / (n - k + i))
            throw std::overflow_error("binom: 64-bit overflow");
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace maxrank

#endif
