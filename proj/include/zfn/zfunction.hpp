#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "zfn/core_arith.hpp"
#include "zfn/errors.hpp"

namespace zfn {

// Z(n) is the least m >= 1 with n | T(m), where T(m) = m(m+1)/2.

/// Brute-force evaluation: linear scan starting at the first m with
/// T(m) >= n (no smaller m can work, since any positive multiple of n
/// is at least n). Serves as the oracle for z_fast. Requires T(2n-1)
/// representable, i.e. n <= 2^31.
uint64_t z_naive(uint64_t n);

/// Fast evaluation via unitary divisor splits of M = 2n: n | T(m) iff
/// 2n | m(m+1), and gcd(m, m+1) = 1 forces each prime-power block of M
/// wholly into m or m+1. Each split M = a*b with gcd(a,b) = 1 yields the
/// congruences m = 0 (mod a), m = -1 (mod b), solved by crt_pair; residue
/// 0 maps to candidate M (m must be >= 1). The answer is the minimum
/// candidate. Valid for 1 <= n < 2^62.
uint64_t z_fast(uint64_t n);

/// Same as z_fast with the factorization of n already known.
uint64_t z_fast_factored(uint64_t n, const Factorization& factors);

/// Z(T(m)) = m, verified by evaluation; returns m.
uint64_t z_of_triangular(uint64_t m);

// Closed forms for special arguments, validated against their premises:
//   Z(2^k)    = 2^(k+1) - 1
//   Z(p^k)    = p^k - 1              (p an odd prime)
//   Z(2 p^k)  = p^k - 1 or p^k       (as p^k = 1 or 3 mod 4)
uint64_t z_power_of_two(uint64_t k);
uint64_t z_odd_prime_power(uint64_t p, uint64_t k);
uint64_t z_twice_odd_prime_power(uint64_t p, uint64_t k);

struct ZRecord {
    uint64_t n;
    uint64_t z;       // Z(n)
    uint64_t t_of_z;  // T(Z(n)), a multiple of n
};

/// Evaluate Z(n) and T(Z(n)), asserting the divisibility invariant.
ZRecord z_record(uint64_t n);

/// Dense table of Z(n) for 1 <= n <= n_max, with a binary cache format:
/// magic "ZTAB", u32 LE version (1), u64 LE n_max, then n_max u64 LE
/// values in order n = 1..n_max. Builds partition the range among
/// threads; the result is identical for any thread count.
class ZTable {
public:
    static constexpr uint64_t kDefaultCeiling = 100'000'000;

    static ZTable build(uint64_t n_max, unsigned threads = 1,
                        uint64_t ceiling = kDefaultCeiling);

    /// Load `path` if it is a valid cache covering n_max, else build and
    /// overwrite it. `from_cache`, when given, reports which happened.
    static ZTable load_or_build(const std::filesystem::path& path, uint64_t n_max,
                                unsigned threads = 1, bool* from_cache = nullptr);

    static ZTable load(const std::filesystem::path& path);

    void save(const std::filesystem::path& path) const;
    void save_prefix(uint64_t n_max, const std::filesystem::path& path) const;

    uint64_t n_max() const noexcept { return values_.size(); }
    uint64_t z(uint64_t n) const;
    std::span<const uint64_t> values() const noexcept { return values_; }

private:
    explicit ZTable(std::vector<uint64_t> values) : values_(std::move(values)) {}

    std::vector<uint64_t> values_;  // values_[n-1] = Z(n)
};

// Property sweeps over the elementary identities of Z. Each throws
// CheckFailure naming the violated property, and returns how many
// individual checks ran.

struct ZPropertyReport {
    uint64_t n_max = 0;
    uint64_t triangular_checks = 0;   // Z(T(m)) = m for T(m) <= n_max
    uint64_t sqrt_checks = 0;         // sqrt(n) < Z(n) for n >= 2; Z(1) = 1
    uint64_t upper_bound_checks = 0;  // Z(n) <= 2n-1; <= n-1 for odd n >= 3
    uint64_t odd_prime_checks = 0;    // p | n, p odd prime => Z(n) >= p-1
};

ZPropertyReport check_z_properties(uint64_t n_max);

/// Z(2^k) closed form vs split evaluation for 0 <= k <= k_max.
uint64_t check_power_of_two_closed_form(uint64_t k_max);

/// Closed forms for all odd prime powers p^k < limit (both p^k and 2p^k).
uint64_t check_odd_prime_power_closed_forms(uint64_t limit);

}  // namespace zfn
