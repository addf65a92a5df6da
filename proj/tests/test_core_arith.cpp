#include <cstdint>
#include <numeric>
#include <random>

#include "doctest.h"
#include "zfn/core_arith.hpp"

using namespace zfn;

namespace {

// Trial-division oracle, independent of the Miller-Rabin path.
bool is_prime_trial(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("triangular numbers") {
    CHECK(triangular(0) == 0);
    CHECK(triangular(1) == 1);
    CHECK(triangular(3) == 6);
    CHECK(triangular(7) == 28);
    CHECK(triangular(10) == 55);
    // largest representable argument: T(2^32-1) = 2^63 - 2^31
    CHECK(triangular(4294967295ull) == 9223372034707292160ull);
    CHECK_THROWS_AS(triangular(4294967296ull), OverflowError);
}

TEST_CASE("consecutive triangular difference") {
    for (uint64_t m = 0; m <= 2000; ++m)
        CHECK(triangular(m + 1) - triangular(m) == m + 1);
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        const uint64_t m = rng() % 4294967294ull;
        CHECK(triangular(m + 1) - triangular(m) == m + 1);
    }
}

TEST_CASE("integer square root") {
    CHECK(integer_sqrt(0) == 0);
    CHECK(integer_sqrt(1) == 1);
    CHECK(integer_sqrt(15) == 3);
    CHECK(integer_sqrt(16) == 4);
    CHECK(integer_sqrt(24) == 4);
    CHECK(integer_sqrt(25) == 5);
    CHECK(integer_sqrt(kNaturalMax) == 3037000499ull);

    std::mt19937_64 rng(987);
    for (int i = 0; i < 5000; ++i) {
        const uint64_t n = rng() & kNaturalMax;
        const uint64_t s = integer_sqrt(n);
        CHECK(s * s <= n);
        CHECK((unsigned __int128)(s + 1) * (s + 1) > n);
    }
    for (uint64_t s = 1; s <= 3000; ++s) {
        CHECK(integer_sqrt(s * s) == s);
        CHECK(integer_sqrt(s * s - 1) == s - 1);
    }
}

TEST_CASE("primality spot values") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(561));         // Carmichael number 3*11*17
    CHECK(is_prime(1000000007ull));
    CHECK_FALSE(is_prime(4033));        // base-2 strong pseudoprime, 37*109
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
    CHECK(is_prime(2305843009213693951ull));  // 2^61 - 1
    CHECK_FALSE(is_prime(2305843009213693953ull));
}

TEST_CASE("primality agrees with trial division up to 1e5") {
    for (uint64_t n = 0; n <= 100000; ++n)
        CHECK(is_prime(n) == is_prime_trial(n));
}

TEST_CASE("factorize spot values") {
    CHECK(factorize(1).empty());
    CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(30030) ==
          Factorization{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}});
    CHECK(factorize(uint64_t{1} << 62) == Factorization{{2, 62}});
    // semiprime beyond the trial range
    CHECK(factorize(1000003ull * 1000033ull) ==
          Factorization{{1000003, 1}, {1000033, 1}});
    CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize reconstructs n with prime parts") {
    for (uint64_t n = 1; n <= 100000; ++n) {
        const auto f = factorize(n);
        CHECK(product(f) == n);
        for (size_t i = 0; i < f.size(); ++i) {
            CHECK(is_prime(f[i].prime));
            if (i > 0) CHECK(f[i - 1].prime < f[i].prime);
        }
    }
    std::mt19937_64 rng(555);
    for (int i = 0; i < 200; ++i) {
        const uint64_t n = (rng() & kNaturalMax) | 1;
        const auto f = factorize(n);
        CHECK(product(f) == n);
        for (const auto& pp : f) CHECK(is_prime(pp.prime));
    }
}

TEST_CASE("crt_pair spot values") {
    CHECK(crt_pair(0, 4, 2, 3) == 8);
    CHECK(crt_pair(0, 1, 5, 7) == 5);
    CHECK(crt_pair(3, 7, 0, 5) == 10);
    CHECK(crt_pair(0, 5, 0, 1) == 0);
    CHECK_THROWS_AS(crt_pair(0, 4, 1, 6), NotCoprimeError);
    CHECK_THROWS_AS(crt_pair(1, 4, 5, 3), DomainError);  // residue not reduced
    CHECK_THROWS_AS(crt_pair(0, uint64_t{1} << 32, 1, (uint64_t{1} << 32) - 1),
                    OverflowError);
}

TEST_CASE("crt_pair satisfies both congruences on random coprime pairs") {
    std::mt19937_64 rng(42);
    int done = 0;
    while (done < 2000) {
        const uint64_t m1 = rng() % 100000 + 1;
        const uint64_t m2 = rng() % 100000 + 1;
        if (std::gcd(m1, m2) != 1) continue;
        const uint64_t r1 = rng() % m1;
        const uint64_t r2 = rng() % m2;
        const uint64_t r = crt_pair(r1, m1, r2, m2);
        CHECK(r % m1 == r1);
        CHECK(r % m2 == r2);
        CHECK((unsigned __int128)r < (unsigned __int128)m1 * m2);
        ++done;
    }
}

TEST_CASE("next_prime_in_progression") {
    auto hit = next_prime_in_progression(7, 18, 100);
    CHECK(hit.t == 0);
    CHECK(hit.prime == 7);

    hit = next_prime_in_progression(29, 196, 100);
    CHECK(hit.t == 0);
    CHECK(hit.prime == 29);

    hit = next_prime_in_progression(27, 196, 100);
    CHECK(hit.t == 1);
    CHECK(hit.prime == 223);

    CHECK_THROWS_AS(next_prime_in_progression(6, 9, 10), NotCoprimeError);
    CHECK_THROWS_AS(next_prime_in_progression(1, 2, 0), ExhaustionError);
    CHECK_THROWS_AS(next_prime_in_progression(1, kNaturalMax, 2), OverflowError);
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_add(kNaturalMax - 1, 1) == kNaturalMax);
    CHECK_THROWS_AS(checked_add(kNaturalMax, 1), OverflowError);
    CHECK(checked_mul(uint64_t{1} << 31, uint64_t{1} << 31) == uint64_t{1} << 62);
    CHECK_THROWS_AS(checked_mul(uint64_t{1} << 32, uint64_t{1} << 31), OverflowError);
}

TEST_CASE("modular helpers") {
    CHECK(mul_mod(kNaturalMax, kNaturalMax, 1000000007ull) ==
          (unsigned __int128)kNaturalMax * kNaturalMax % 1000000007ull);
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(pow_mod(2, 0, 7) == 1);
    CHECK(pow_mod(5, 3, 1) == 0);
}
