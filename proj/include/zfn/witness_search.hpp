#pragma once

#include <cstdint>
#include <string>

#include "zfn/rational.hpp"

namespace zfn {

// Constructive witnesses for the extremal behaviour of Z. Each search picks
// its parameters deterministically (smallest valid k, then the smallest t
// giving a prime), verifies every claimed Z value by exact computation, and
// returns a record that re-passes validate_witness.

inline constexpr uint64_t kDefaultProgressionLimit = 1'000'000;

// Cross-check threshold: below this, validators recompute Z with the
// brute-force scan as well.
inline constexpr uint64_t kNaiveCrossCheckLimit = 1'000'000;

enum class RatioDirection { up, down };

/// Witness for Z(n+1)/Z(n) > L (up) or Z(n-1)/Z(n) > L (down), built from
/// k = 3 (mod 4): n = T(k)(1+kt) with n+1 (resp. n-1) prime, so the
/// neighbour's Z equals n (resp. n-2) while Z(n) <= k + k(k+1)t.
struct RatioWitness {
    RatioDirection direction = RatioDirection::up;
    Rational target;      // L
    uint64_t k = 0;       // k = 3 (mod 4)
    uint64_t t = 0;       // progression step that hit a prime
    uint64_t n = 0;       // T(k)(1+kt)
    uint64_t z_n = 0;     // Z(n), computed exactly
    uint64_t z_neighbor = 0;
    Rational ratio;       // z_neighbor / z_n
};

/// Witness for n/Z(n) = k: p the smallest prime = -1 (mod 2k), n = p*k,
/// Z(n) = p exactly.
struct QuotientWitness {
    uint64_t k = 0;
    uint64_t p = 0;
    uint64_t n = 0;
    uint64_t z_n = 0;  // = p
};

/// Witness for Z(2n)/Z(n) > B: p the smallest prime = -1 (mod 2^k) with
/// (2^k - 1)/2 > B, n = T(p), Z(n) = p, and Z(2n) = p*t + eps with
/// t >= 2^k - 1 and eps in {0, -1}.
struct DoublingWitness {
    Rational target;  // B
    uint64_t k = 0;
    uint64_t p = 0;
    uint64_t n = 0;     // T(p)
    uint64_t z_n = 0;   // = p
    uint64_t z_2n = 0;  // Z(2n)
    Rational ratio;     // z_2n / z_n
};

RatioWitness ratio_up_witness(const Rational& L,
                              uint64_t t_max = kDefaultProgressionLimit);
RatioWitness ratio_down_witness(const Rational& L,
                                uint64_t t_max = kDefaultProgressionLimit);
QuotientWitness quotient_witness(uint64_t k,
                                 uint64_t t_max = kDefaultProgressionLimit);
DoublingWitness doubling_witness(const Rational& B,
                                 uint64_t t_max = kDefaultProgressionLimit);

struct Validation {
    bool ok = true;
    std::string failed_check;  // name of the first failed check when !ok

    explicit operator bool() const noexcept { return ok; }
};

// Recompute every claimed Z value (z_fast, plus z_naive below the
// cross-check limit), re-verify primality and congruence conditions, and
// confirm the claimed inequality. Never throws: any evaluation error is
// reported as the failed check.
Validation validate_witness(const RatioWitness& w);
Validation validate_witness(const QuotientWitness& w);
Validation validate_witness(const DoublingWitness& w);

// Line-oriented serialization. One record per line; fields are the theorem
// tag, the construction parameters, the Z values, and the ratio as
// "numerator/denominator".
std::string to_jsonl(const RatioWitness& w);
std::string to_jsonl(const QuotientWitness& w);
std::string to_jsonl(const DoublingWitness& w);

std::string to_text(const RatioWitness& w);
std::string to_text(const QuotientWitness& w);
std::string to_text(const DoublingWitness& w);

}  // namespace zfn
