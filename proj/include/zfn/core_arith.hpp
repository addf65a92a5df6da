#pragma once

#include <cstdint>
#include <vector>

#include "zfn/errors.hpp"

namespace zfn {

// Every quantity the toolkit handles lives in [0, 2^63). That leaves enough
// headroom for 128-bit intermediates in modular arithmetic and CRT lifting.
inline constexpr uint64_t kNaturalMax = (uint64_t{1} << 63) - 1;

// Overflow-checked arithmetic against kNaturalMax; throws OverflowError
// instead of wrapping.
uint64_t checked_add(uint64_t a, uint64_t b);
uint64_t checked_mul(uint64_t a, uint64_t b);

/// m-th triangular number m(m+1)/2, exact; OverflowError past 2^63-1.
uint64_t triangular(uint64_t m);

/// Largest s with s*s <= n.
uint64_t integer_sqrt(uint64_t n);

/// Deterministic Miller-Rabin with a witness set that is exact for every
/// 64-bit input. No probabilistic caveats.
bool is_prime(uint64_t n);

struct PrimePower {
    uint64_t prime;
    uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing; factorize(1) == {}.
using Factorization = std::vector<PrimePower>;

/// Factor n (>= 1) by trial division over small primes, then Pollard rho
/// with Brent cycle detection. Handles the full 63-bit range.
Factorization factorize(uint64_t n);

/// Multiply a factorization back together (overflow-checked).
uint64_t product(const Factorization& f);

/// Unique r in [0, mod1*mod2) with r = r1 (mod mod1) and r = r2 (mod mod2).
/// Requires reduced residues and coprime moduli; signals NotCoprimeError
/// otherwise, and OverflowError when mod1*mod2 >= 2^63.
uint64_t crt_pair(uint64_t r1, uint64_t mod1, uint64_t r2, uint64_t mod2);

struct ProgressionPrime {
    uint64_t t;
    uint64_t prime;
};

/// Smallest t in [0, t_max] with a + b*t prime, plus that prime.
/// The search is bounded: an ExhaustionError reports t_max exceeded even
/// though a prime exists further out for coprime a, b.
ProgressionPrime next_prime_in_progression(uint64_t a, uint64_t b, uint64_t t_max);

// 128-bit-safe modular helpers, exposed for reuse.
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

}  // namespace zfn
