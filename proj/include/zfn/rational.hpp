#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "zfn/errors.hpp"

namespace zfn {

// Exact nonnegative rational on 64-bit parts. Comparisons cross-multiply in
// 128 bits, so no rounding can ever accept a false inequality.
class Rational {
public:
    Rational() = default;

    Rational(uint64_t num, uint64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw DomainError("rational: zero denominator");
        const uint64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    uint64_t num() const noexcept { return num_; }
    uint64_t den() const noexcept { return den_; }

    /// Accepts "a" or "a/b" with nonnegative decimal integers.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_u64(text), 1);
        return Rational(parse_u64(text.substr(0, slash)),
                        parse_u64(text.substr(slash + 1)));
    }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    double approx() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend bool operator==(const Rational& a, const Rational& b) = default;

    friend bool operator<(const Rational& a, const Rational& b) {
        using u128 = unsigned __int128;
        return u128{a.num_} * b.den_ < u128{b.num_} * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    static uint64_t parse_u64(std::string_view s) {
        uint64_t v = 0;
        const auto* end = s.data() + s.size();
        const auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (s.empty() || ec != std::errc{} || ptr != end)
            throw DomainError("rational: malformed number '" + std::string(s) + "'");
        return v;
    }

    uint64_t num_ = 0;
    uint64_t den_ = 1;
};

}  // namespace zfn
