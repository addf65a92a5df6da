#include "zfn/witness_search.hpp"

#include <sstream>

#include "zfn/core_arith.hpp"
#include "zfn/zfunction.hpp"

namespace zfn {

namespace {

using u128 = unsigned __int128;

// Smallest k = 3 (mod 4) with k > mult * L.
uint64_t smallest_k_3mod4_exceeding(const Rational& L, uint64_t mult) {
    u128 k = u128{mult} * L.num() / L.den() + 1;
    k += (3 + 4 - k % 4) % 4;
    if (k > kNaturalMax) throw OverflowError("ratio witness: k exceeds 2^63-1");
    return static_cast<uint64_t>(k);
}

RatioWitness ratio_witness_impl(RatioDirection direction, const Rational& L,
                                uint64_t t_max) {
    if (L.num() == 0) throw DomainError("ratio witness: L must be positive");
    const uint64_t mult = direction == RatioDirection::up ? 3 : 4;
    const uint64_t k = smallest_k_3mod4_exceeding(L, mult);
    const uint64_t tk = triangular(k);  // even, and divisible by k
    const uint64_t increment = checked_mul(k, tk);
    const uint64_t start =
        direction == RatioDirection::up ? checked_add(tk, 1) : tk - 1;
    const auto hit = next_prime_in_progression(start, increment, t_max);

    RatioWitness w;
    w.direction = direction;
    w.target = L;
    w.k = k;
    w.t = hit.t;
    w.n = direction == RatioDirection::up ? hit.prime - 1 : checked_add(hit.prime, 1);
    w.z_n = z_fast(w.n);
    // the neighbour is an odd prime p, whose Z is p-1
    w.z_neighbor = z_fast(hit.prime);
    w.ratio = Rational(w.z_neighbor, w.z_n);
    if (const auto v = validate_witness(w); !v.ok)
        throw CheckFailure("ratio witness failed validation: " + v.failed_check);
    return w;
}

}  // namespace

RatioWitness ratio_up_witness(const Rational& L, uint64_t t_max) {
    return ratio_witness_impl(RatioDirection::up, L, t_max);
}

RatioWitness ratio_down_witness(const Rational& L, uint64_t t_max) {
    return ratio_witness_impl(RatioDirection::down, L, t_max);
}

QuotientWitness quotient_witness(uint64_t k, uint64_t t_max) {
    if (k < 2) throw DomainError("quotient witness: k must be >= 2");
    const uint64_t two_k = checked_mul(2, k);
    const auto hit = next_prime_in_progression(two_k - 1, two_k, t_max);
    QuotientWitness w;
    w.k = k;
    w.p = hit.prime;
    w.n = checked_mul(hit.prime, k);
    w.z_n = z_fast(w.n);
    // Z(n) is p or p-1; the p-1 branch would force 2n | 2p, impossible for k > 1
    if (const auto v = validate_witness(w); !v.ok)
        throw CheckFailure("quotient witness failed validation: " + v.failed_check);
    return w;
}

DoublingWitness doubling_witness(const Rational& B, uint64_t t_max) {
    if (B.num() == 0) throw DomainError("doubling witness: B must be positive");
    // smallest k >= 2 with (2^k - 1)/2 > B
    uint64_t k = 2;
    while (u128{(uint64_t{1} << k) - 1} * B.den() <= u128{2} * B.num()) {
        if (++k > 62) throw OverflowError("doubling witness: 2^k exceeds 2^63-1");
    }
    const uint64_t modulus = uint64_t{1} << k;
    const auto hit = next_prime_in_progression(modulus - 1, modulus, t_max);
    DoublingWitness w;
    w.target = B;
    w.k = k;
    w.p = hit.prime;
    w.n = triangular(hit.prime);
    w.z_n = z_fast(w.n);
    w.z_2n = z_fast(checked_mul(2, w.n));
    w.ratio = Rational(w.z_2n, w.z_n);
    if (const auto v = validate_witness(w); !v.ok)
        throw CheckFailure("doubling witness failed validation: " + v.failed_check);
    return w;
}

namespace {

bool z_matches(uint64_t n, uint64_t claimed) {
    if (z_fast(n) != claimed) return false;
    if (n <= kNaiveCrossCheckLimit && z_naive(n) != claimed) return false;
    return true;
}

}  // namespace

Validation validate_witness(const RatioWitness& w) {
    try {
        if (w.k % 4 != 3) return {false, "k_congruence"};
        if (w.n < 2) return {false, "n_range"};
        const uint64_t tk = triangular(w.k);
        if (w.n != checked_mul(tk, checked_add(1, checked_mul(w.k, w.t))))
            return {false, "n_construction"};
        const uint64_t neighbor =
            w.direction == RatioDirection::up ? w.n + 1 : w.n - 1;
        if (!is_prime(neighbor)) return {false, "neighbor_prime"};
        if (!z_matches(w.n, w.z_n)) return {false, "z_value"};
        if (w.z_neighbor != neighbor - 1) return {false, "neighbor_z"};
        if (!z_matches(neighbor, w.z_neighbor)) return {false, "neighbor_z"};
        if (w.ratio != Rational(w.z_neighbor, w.z_n)) return {false, "ratio_value"};
        if (!(w.ratio > w.target)) return {false, "ratio_exceeds_target"};
        return {};
    } catch (const Error&) {
        return {false, "evaluation_error"};
    }
}

Validation validate_witness(const QuotientWitness& w) {
    try {
        if (w.k < 2) return {false, "k_range"};
        if (!is_prime(w.p)) return {false, "p_prime"};
        const uint64_t two_k = checked_mul(2, w.k);
        if (w.p % two_k != two_k - 1) return {false, "p_congruence"};
        if (w.n != checked_mul(w.p, w.k)) return {false, "n_construction"};
        if (!z_matches(w.n, w.z_n)) return {false, "z_value"};
        if (w.z_n != w.p) return {false, "quotient"};
        if (w.n % w.z_n != 0 || w.n / w.z_n != w.k) return {false, "quotient"};
        return {};
    } catch (const Error&) {
        return {false, "evaluation_error"};
    }
}

Validation validate_witness(const DoublingWitness& w) {
    try {
        if (w.k < 2 || w.k > 62) return {false, "k_range"};
        if (!is_prime(w.p)) return {false, "p_prime"};
        const uint64_t modulus = uint64_t{1} << w.k;
        if (w.p % modulus != modulus - 1) return {false, "p_congruence"};
        if (w.n != triangular(w.p)) return {false, "n_construction"};
        if (w.z_n != w.p) return {false, "z_value"};
        if (!z_matches(w.n, w.z_n)) return {false, "z_value"};
        if (!z_matches(checked_mul(2, w.n), w.z_2n)) return {false, "z2n_value"};
        if (w.ratio != Rational(w.z_2n, w.z_n)) return {false, "ratio_value"};
        if (!(w.ratio > w.target)) return {false, "ratio_exceeds_target"};
        if (!(w.ratio > Rational(modulus - 1, 2))) return {false, "ratio_exceeds_half_2k"};
        // Z(2n) = p*t + eps with eps in {0, -1} and t >= 2^k - 1
        const uint64_t r = w.z_2n % w.p;
        if (r != 0 && r != w.p - 1) return {false, "z2n_residue"};
        const uint64_t t = r == 0 ? w.z_2n / w.p : (w.z_2n + 1) / w.p;
        if (t < modulus - 1) return {false, "t_lower_bound"};
        if (u128{w.z_2n} + 1 < u128{w.p} * (modulus - 1))
            return {false, "z2n_lower_bound"};
        return {};
    } catch (const Error&) {
        return {false, "evaluation_error"};
    }
}

std::string to_jsonl(const RatioWitness& w) {
    std::ostringstream os;
    os << "{\"theorem\":\""
       << (w.direction == RatioDirection::up ? "ratio-up" : "ratio-down")
       << "\",\"L\":\"" << w.target.str() << "\",\"k\":" << w.k << ",\"t\":" << w.t
       << ",\"n\":" << w.n << ",\"z_n\":" << w.z_n << ",\"z_neighbor\":" << w.z_neighbor
       << ",\"ratio\":\"" << w.ratio.str() << "\"}";
    return os.str();
}

std::string to_jsonl(const QuotientWitness& w) {
    std::ostringstream os;
    os << "{\"theorem\":\"quotient\",\"k\":" << w.k << ",\"p\":" << w.p
       << ",\"n\":" << w.n << ",\"z_n\":" << w.z_n << ",\"ratio\":\""
       << Rational(w.n, w.z_n).str() << "\"}";
    return os.str();
}

std::string to_jsonl(const DoublingWitness& w) {
    std::ostringstream os;
    os << "{\"theorem\":\"doubling\",\"B\":\"" << w.target.str() << "\",\"k\":" << w.k
       << ",\"p\":" << w.p << ",\"n\":" << w.n << ",\"z_n\":" << w.z_n
       << ",\"z_2n\":" << w.z_2n << ",\"ratio\":\"" << w.ratio.str() << "\"}";
    return os.str();
}

std::string to_text(const RatioWitness& w) {
    std::ostringstream os;
    os << (w.direction == RatioDirection::up ? "ratio-up" : "ratio-down")
       << " L=" << w.target.str() << " k=" << w.k << " t=" << w.t << " n=" << w.n
       << " z_n=" << w.z_n << " z_neighbor=" << w.z_neighbor
       << " ratio=" << w.ratio.str();
    return os.str();
}

std::string to_text(const QuotientWitness& w) {
    std::ostringstream os;
    os << "quotient k=" << w.k << " p=" << w.p << " n=" << w.n << " z_n=" << w.z_n
       << " ratio=" << Rational(w.n, w.z_n).str();
    return os.str();
}

std::string to_text(const DoublingWitness& w) {
    std::ostringstream os;
    os << "doubling B=" << w.target.str() << " k=" << w.k << " p=" << w.p
       << " n=" << w.n << " z_n=" << w.z_n << " z_2n=" << w.z_2n
       << " ratio=" << w.ratio.str();
    return os.str();
}

}  // namespace zfn
