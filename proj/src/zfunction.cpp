#include "zfn/zfunction.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>

namespace zfn {

namespace {

using u128 = unsigned __int128;

// At most 15 distinct prime-power blocks fit in a 63-bit value of 2n.
constexpr int kMaxBlocks = 16;

uint64_t pow_u64(uint64_t p, uint32_t e) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= p;
    return q;
}

// Minimum m >= 1 with M | m(m+1), M given as prime-power blocks.
uint64_t z_from_blocks(uint64_t m_value, const uint64_t* blocks, int count) {
    uint64_t best = m_value;  // the a=M, b=1 split: m = 0 (mod M) -> m = M
    const uint32_t full = uint32_t{1} << count;
    for (uint32_t mask = 0; mask + 1 < full; ++mask) {
        uint64_t a = 1;
        for (uint32_t bits = mask; bits != 0; bits &= bits - 1)
            a *= blocks[std::countr_zero(bits)];
        const uint64_t b = m_value / a;
        const uint64_t m = crt_pair(0, a, b - 1, b);
        // every split with b > 1 has m = b-1 >= 1
        if (m < best) best = m;
    }
    return best;
}

std::vector<uint32_t> spf_sieve(uint64_t n_max) {
    std::vector<uint32_t> spf(n_max + 1, 0);
    for (uint64_t i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            for (uint64_t j = i; j <= n_max; j += i)
                if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
        }
    }
    return spf;
}

// Prime-power blocks of 2n from the smallest-prime-factor table.
int blocks_of_2n(uint64_t n, const std::vector<uint32_t>& spf, uint64_t* blocks) {
    int count = 0;
    uint64_t two_block = 2;
    uint64_t rest = n;
    while ((rest & 1) == 0) {
        rest >>= 1;
        two_block <<= 1;
    }
    blocks[count++] = two_block;
    while (rest > 1) {
        const uint64_t p = spf[rest];
        uint64_t q = 1;
        while (rest % p == 0) {
            rest /= p;
            q *= p;
        }
        blocks[count++] = q;
    }
    return count;
}

}  // namespace

uint64_t z_naive(uint64_t n) {
    if (n == 0) throw DomainError("z_naive: n must be >= 1");
    if (u128{n} * (2 * u128{n} - 1) > kNaturalMax)
        throw OverflowError("z_naive: T(2n-1) exceeds 2^63-1; use z_fast");
    // first m with T(m) >= n; no multiple of n below n can appear earlier
    uint64_t m = (integer_sqrt(8 * n + 1) - 1) / 2;
    if (m == 0) m = 1;
    while (m * (m + 1) / 2 < n) ++m;
    while (m > 1 && (m - 1) * m / 2 >= n) --m;
    for (;; ++m) {
        if (m * (m + 1) / 2 % n == 0) return m;  // reached by m = 2n-1 at worst
    }
}

uint64_t z_fast_factored(uint64_t n, const Factorization& factors) {
    if (n == 0) throw DomainError("z_fast: n must be >= 1");
    if (n > kNaturalMax / 2) throw OverflowError("z_fast: 2n exceeds 2^63-1");
    uint64_t blocks[kMaxBlocks];
    int count = 0;
    uint64_t two_block = 2;
    for (const auto& pp : factors) {
        if (pp.prime == 2) {
            two_block <<= pp.exponent;
        } else {
            blocks[count++] = pow_u64(pp.prime, pp.exponent);
        }
    }
    blocks[count++] = two_block;
    return z_from_blocks(2 * n, blocks, count);
}

uint64_t z_fast(uint64_t n) {
    if (n == 0) throw DomainError("z_fast: n must be >= 1");
    if (n > kNaturalMax / 2) throw OverflowError("z_fast: 2n exceeds 2^63-1");
    return z_fast_factored(n, factorize(n));
}

uint64_t z_of_triangular(uint64_t m) {
    if (m == 0) throw DomainError("z_of_triangular: m must be >= 1");
    const uint64_t t = triangular(m);
    const uint64_t z = z_fast(t);
    if (z != m)
        throw CheckFailure("z_of_triangular: Z(T(" + std::to_string(m) + ")) = " +
                           std::to_string(z) + " != m");
    return m;
}

uint64_t z_power_of_two(uint64_t k) {
    if (k > 62) throw OverflowError("z_power_of_two: 2^(k+1)-1 exceeds 2^63-1");
    return (uint64_t{1} << (k + 1)) - 1;
}

uint64_t z_odd_prime_power(uint64_t p, uint64_t k) {
    if (p % 2 == 0 || !is_prime(p))
        throw DomainError("z_odd_prime_power: p must be an odd prime");
    if (k == 0) throw DomainError("z_odd_prime_power: k must be >= 1");
    uint64_t q = 1;
    for (uint64_t i = 0; i < k; ++i) q = checked_mul(q, p);
    return q - 1;
}

uint64_t z_twice_odd_prime_power(uint64_t p, uint64_t k) {
    if (p % 2 == 0 || !is_prime(p))
        throw DomainError("z_twice_odd_prime_power: p must be an odd prime");
    if (k == 0) throw DomainError("z_twice_odd_prime_power: k must be >= 1");
    uint64_t q = 1;
    for (uint64_t i = 0; i < k; ++i) q = checked_mul(q, p);
    checked_mul(q, 2);  // 2p^k itself must be representable
    return q % 4 == 1 ? q - 1 : q;
}

ZRecord z_record(uint64_t n) {
    const uint64_t z = z_fast(n);
    const uint64_t t = triangular(z);
    if (t % n != 0)
        throw CheckFailure("z_record: n does not divide T(Z(n)) at n=" + std::to_string(n));
    return {n, z, t};
}

ZTable ZTable::build(uint64_t n_max, unsigned threads, uint64_t ceiling) {
    if (n_max == 0) throw DomainError("z_table: n_max must be >= 1");
    if (n_max > ceiling)
        throw ResourceLimitError("z_table: n_max " + std::to_string(n_max) +
                                 " exceeds ceiling " + std::to_string(ceiling));
    const auto spf = spf_sieve(n_max);
    std::vector<uint64_t> values(n_max);
    const auto work = [&spf, &values](uint64_t lo, uint64_t hi) {
        uint64_t blocks[kMaxBlocks];
        for (uint64_t n = lo; n <= hi; ++n) {
            const int count = blocks_of_2n(n, spf, blocks);
            values[n - 1] = z_from_blocks(2 * n, blocks, count);
        }
    };
    const unsigned nthreads =
        static_cast<unsigned>(std::min<uint64_t>(std::max(threads, 1u), n_max));
    if (nthreads <= 1) {
        work(1, n_max);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        const uint64_t chunk = (n_max + nthreads - 1) / nthreads;
        for (unsigned i = 0; i < nthreads; ++i) {
            const uint64_t lo = 1 + chunk * i;
            if (lo > n_max) break;
            pool.emplace_back(work, lo, std::min(n_max, lo + chunk - 1));
        }
        for (auto& th : pool) th.join();
    }
    return ZTable(std::move(values));
}

uint64_t ZTable::z(uint64_t n) const {
    if (n == 0) throw DomainError("z_table: n must be >= 1");
    if (n > values_.size())
        throw CoverageError("z_table covers n <= " + std::to_string(values_.size()) +
                            ", requested " + std::to_string(n));
    return values_[n - 1];
}

namespace {

constexpr std::array<unsigned char, 4> kMagic = {'Z', 'T', 'A', 'B'};
constexpr uint32_t kFormatVersion = 1;
constexpr size_t kHeaderBytes = 16;

void put_u32le(unsigned char* out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_u64le(unsigned char* out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

uint32_t get_u32le(const unsigned char* in) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t{in[i]} << (8 * i);
    return v;
}

uint64_t get_u64le(const unsigned char* in) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t{in[i]} << (8 * i);
    return v;
}

}  // namespace

void ZTable::save(const std::filesystem::path& path) const {
    save_prefix(n_max(), path);
}

void ZTable::save_prefix(uint64_t n_max, const std::filesystem::path& path) const {
    if (n_max == 0 || n_max > values_.size())
        throw DomainError("save_prefix: n_max outside table range");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheFormatError("cannot open '" + path.string() + "' for writing");
    unsigned char header[kHeaderBytes];
    std::memcpy(header, kMagic.data(), kMagic.size());
    put_u32le(header + 4, kFormatVersion);
    put_u64le(header + 8, n_max);
    out.write(reinterpret_cast<const char*>(header), kHeaderBytes);
    constexpr size_t kChunk = 8192;
    std::vector<unsigned char> buf(kChunk * 8);
    uint64_t written = 0;
    while (written < n_max) {
        const size_t batch = static_cast<size_t>(std::min<uint64_t>(kChunk, n_max - written));
        for (size_t i = 0; i < batch; ++i)
            put_u64le(buf.data() + 8 * i, values_[written + i]);
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(batch * 8));
        written += batch;
    }
    if (!out) throw CacheFormatError("write failed for '" + path.string() + "'");
}

ZTable ZTable::load(const std::filesystem::path& path) {
    std::error_code ec;
    const auto fsize = std::filesystem::file_size(path, ec);
    if (ec) throw CacheFormatError("cannot stat '" + path.string() + "'");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheFormatError("cannot open '" + path.string() + "'");
    unsigned char header[kHeaderBytes];
    in.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (in.gcount() != kHeaderBytes) throw CacheFormatError("truncated header");
    if (std::memcmp(header, kMagic.data(), kMagic.size()) != 0)
        throw CacheFormatError("bad magic in '" + path.string() + "'");
    const uint32_t version = get_u32le(header + 4);
    if (version != kFormatVersion)
        throw CacheFormatError("unsupported version " + std::to_string(version));
    const uint64_t n_max = get_u64le(header + 8);
    if (n_max == 0 || n_max > kDefaultCeiling)
        throw CacheFormatError("implausible n_max " + std::to_string(n_max));
    if (fsize != kHeaderBytes + 8 * n_max)
        throw CacheFormatError("size mismatch: expected " +
                               std::to_string(kHeaderBytes + 8 * n_max) + " bytes");
    std::vector<uint64_t> values(n_max);
    constexpr size_t kChunk = 8192;
    std::vector<unsigned char> buf(kChunk * 8);
    uint64_t read_count = 0;
    while (read_count < n_max) {
        const size_t batch = static_cast<size_t>(std::min<uint64_t>(kChunk, n_max - read_count));
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(batch * 8));
        if (static_cast<size_t>(in.gcount()) != batch * 8)
            throw CacheFormatError("short read in '" + path.string() + "'");
        for (size_t i = 0; i < batch; ++i)
            values[read_count + i] = get_u64le(buf.data() + 8 * i);
        read_count += batch;
    }
    return ZTable(std::move(values));
}

ZTable ZTable::load_or_build(const std::filesystem::path& path, uint64_t n_max,
                             unsigned threads, bool* from_cache) {
    if (std::filesystem::exists(path)) {
        try {
            ZTable t = load(path);
            if (t.n_max() >= n_max) {
                if (from_cache) *from_cache = true;
                return t;
            }
        } catch (const CacheFormatError&) {
            // fall through and rebuild
        }
    }
    ZTable t = build(n_max, threads);
    t.save(path);
    if (from_cache) *from_cache = false;
    return t;
}

ZPropertyReport check_z_properties(uint64_t n_max) {
    if (n_max == 0) throw DomainError("check_z_properties: n_max must be >= 1");
    const auto spf = spf_sieve(n_max);
    std::vector<uint64_t> zvals(n_max);
    ZPropertyReport report;
    report.n_max = n_max;
    uint64_t blocks[kMaxBlocks];
    for (uint64_t n = 1; n <= n_max; ++n) {
        const int count = blocks_of_2n(n, spf, blocks);
        const uint64_t z = z_from_blocks(2 * n, blocks, count);
        zvals[n - 1] = z;

        if (n == 1) {
            if (z != 1) throw CheckFailure("Z(1) != 1");
        } else if (integer_sqrt(n) >= z) {
            throw CheckFailure("sqrt(n) < Z(n) fails at n=" + std::to_string(n));
        }
        ++report.sqrt_checks;

        if (z > 2 * n - 1)
            throw CheckFailure("Z(n) <= 2n-1 fails at n=" + std::to_string(n));
        if (n % 2 == 1 && n >= 3 && z > n - 1)
            throw CheckFailure("Z(n) <= n-1 fails at odd n=" + std::to_string(n));
        ++report.upper_bound_checks;

        // odd primes dividing n, straight off the non-2 blocks
        for (int i = 1; i < count; ++i) {
            const uint64_t p = spf[blocks[i]];
            if (z < p - 1)
                throw CheckFailure("Z(n) >= p-1 fails at n=" + std::to_string(n) +
                                   ", p=" + std::to_string(p));
            ++report.odd_prime_checks;
        }
    }
    for (uint64_t m = 1;; ++m) {
        const uint64_t t = m * (m + 1) / 2;
        if (t > n_max) break;
        if (zvals[t - 1] != m)
            throw CheckFailure("Z(T(m)) = m fails at m=" + std::to_string(m));
        ++report.triangular_checks;
    }
    return report;
}

uint64_t check_power_of_two_closed_form(uint64_t k_max) {
    uint64_t checks = 0;
    for (uint64_t k = 0; k <= k_max; ++k) {
        if (z_fast(uint64_t{1} << k) != z_power_of_two(k))
            throw CheckFailure("Z(2^k) closed form fails at k=" + std::to_string(k));
        ++checks;
    }
    return checks;
}

uint64_t check_odd_prime_power_closed_forms(uint64_t limit) {
    if (limit < 3) return 0;
    // plain sieve of the odd primes below limit
    std::vector<uint8_t> composite(limit, 0);
    uint64_t checks = 0;
    for (uint64_t p = 3; p < limit; p += 2) {
        if (composite[p]) continue;
        for (uint64_t j = p * p; j < limit; j += 2 * p) composite[j] = 1;
        uint64_t q = p;
        uint32_t k = 1;
        while (q < limit) {
            if (z_fast(q) != z_odd_prime_power(p, k))
                throw CheckFailure("Z(p^k) closed form fails at p=" + std::to_string(p) +
                                   ", k=" + std::to_string(k));
            if (z_fast(2 * q) != z_twice_odd_prime_power(p, k))
                throw CheckFailure("Z(2p^k) closed form fails at p=" + std::to_string(p) +
                                   ", k=" + std::to_string(k));
            checks += 2;
            if (q > (limit - 1) / p) break;
            q *= p;
            ++k;
        }
    }
    return checks;
}

}  // namespace zfn
