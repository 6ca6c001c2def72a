#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace motivic {

inline int mobius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline std::vector<int> divisors(int n) {
    std::vector<int> d;
    for (int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Returns the prime p if n = p^e, else 0.
inline long prime_base(long n) {
    if (n < 2) return 0;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? p : 0;
        }
    }
    return n;
}

inline long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Exact integer square root if n is a perfect square, else -1.
inline long perfect_sqrt(long n) {
    if (n < 0) return -1;
    long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

} // namespace motivic
