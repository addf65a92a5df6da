#include "zfn/core_arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace zfn {

namespace {
using u128 = unsigned __int128;
}

uint64_t checked_add(uint64_t a, uint64_t b) {
    const uint64_t s = a + b;
    if (s < a || s > kNaturalMax) throw OverflowError("sum exceeds 2^63-1");
    return s;
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
    const u128 p = u128{a} * b;
    if (p > kNaturalMax) throw OverflowError("product exceeds 2^63-1");
    return static_cast<uint64_t>(p);
}

uint64_t triangular(uint64_t m) {
    const u128 t = u128{m} * (u128{m} + 1) / 2;
    if (t > kNaturalMax) throw OverflowError("triangular(m) exceeds 2^63-1");
    return static_cast<uint64_t>(t);
}

uint64_t integer_sqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t s = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (s > 0 && u128{s} * s > n) --s;
    while (u128{s + 1} * (s + 1) <= n) ++s;
    return s;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(u128{a} * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

// Complete witness set for n < 3.3e24, hence for the whole 64-bit range.
constexpr std::array<uint64_t, 12> kMillerRabinBases = {2, 3, 5, 7, 11, 13,
                                                        17, 19, 23, 29, 31, 37};

bool miller_rabin_probable(uint64_t n, uint64_t a) {
    // n odd, n > a
    uint64_t d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : kMillerRabinBases) {
        if (n % p == 0) return n == p;
    }
    // No prime factor <= 37, so anything below 41^2 is prime.
    if (n < 41 * 41) return true;
    for (uint64_t a : kMillerRabinBases) {
        if (!miller_rabin_probable(n, a)) return false;
    }
    return true;
}

namespace {

constexpr std::array<uint64_t, 25> kTrialPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
    47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Brent-cycle Pollard rho. n must be an odd composite with no factor <= 97.
uint64_t pollard_brent(uint64_t n) {
    for (uint64_t c = 1;; ++c) {
        const auto step = [n, c](uint64_t x) {
            uint64_t v = mul_mod(x, x, n) + c;
            if (v >= n) v -= n;
            return v;
        };
        uint64_t y = 2, r = 1, q = 1, g = 1;
        uint64_t x = 0, ys = 0;
        constexpr uint64_t kBatch = 128;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = step(y);
            for (uint64_t k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                const uint64_t lim = std::min(kBatch, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
        // cycle collapsed onto n itself; retry with the next polynomial
    }
}

}  // namespace

Factorization factorize(uint64_t n) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    Factorization out;
    for (uint64_t p : kTrialPrimes) {
        if (n % p == 0) {
            uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) {
        std::map<uint64_t, uint32_t> found;
        std::vector<uint64_t> pending{n};
        while (!pending.empty()) {
            const uint64_t v = pending.back();
            pending.pop_back();
            if (is_prime(v)) {
                ++found[v];
                continue;
            }
            const uint64_t d = pollard_brent(v);
            pending.push_back(d);
            pending.push_back(v / d);
        }
        // every prime found here exceeds the trial range, so order is kept
        for (const auto& [p, e] : found) out.push_back({p, e});
    }
    return out;
}

uint64_t product(const Factorization& f) {
    uint64_t acc = 1;
    for (const auto& pp : f) {
        for (uint32_t i = 0; i < pp.exponent; ++i) acc = checked_mul(acc, pp.prime);
    }
    return acc;
}

namespace {

// gcd(a, m); when it is 1 and m > 1, inv receives the inverse of a mod m.
uint64_t gcd_with_inverse(uint64_t a, uint64_t m, uint64_t& inv) {
    if (m == 1) {
        inv = 0;
        return 1;
    }
    __int128 t = 0, new_t = 1;
    uint64_t r = m, new_r = a % m;
    while (new_r != 0) {
        const uint64_t q = r / new_r;
        const __int128 tmp_t = t - static_cast<__int128>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        const uint64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r == 1) {
        if (t < 0) t += m;
        inv = static_cast<uint64_t>(t);
    }
    return r;
}

}  // namespace

uint64_t crt_pair(uint64_t r1, uint64_t mod1, uint64_t r2, uint64_t mod2) {
    if (mod1 == 0 || mod2 == 0) throw DomainError("crt_pair: moduli must be positive");
    if (r1 >= mod1 || r2 >= mod2) throw DomainError("crt_pair: residues must be reduced");
    if (u128{mod1} * mod2 > kNaturalMax)
        throw OverflowError("crt_pair: modulus product reaches 2^63");
    uint64_t inv = 0;
    if (gcd_with_inverse(mod1 % mod2, mod2, inv) != 1)
        throw NotCoprimeError("crt_pair: moduli share a factor");
    const uint64_t r1m = r1 % mod2;
    const uint64_t delta = r2 >= r1m ? r2 - r1m : mod2 - (r1m - r2);
    const uint64_t k = mul_mod(delta, inv, mod2);
    return r1 + mod1 * k;  // < mod1*mod2 <= 2^63-1
}

ProgressionPrime next_prime_in_progression(uint64_t a, uint64_t b, uint64_t t_max) {
    if (std::gcd(a, b) != 1)
        throw NotCoprimeError("progression a+bt requires gcd(a,b)=1");
    if (u128{b} * t_max + a > kNaturalMax)
        throw OverflowError("progression endpoint a+b*t_max exceeds 2^63-1");
    for (uint64_t t = 0; t <= t_max; ++t) {
        const uint64_t value = a + b * t;
        if (is_prime(value)) return {t, value};
    }
    throw ExhaustionError("no prime in a+bt for t <= " + std::to_string(t_max));
}

}  // namespace zfn
