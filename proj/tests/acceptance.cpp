// Acceptance suite: runs every release criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.
//
//   zfn_acceptance [--cli PATH]
//
// --cli names the command-line binary used by the determinism criterion
// (defaults to ./zfn).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zfn/analytic_bounds.hpp"
#include "zfn/core_arith.hpp"
#include "zfn/rational.hpp"
#include "zfn/witness_search.hpp"
#include "zfn/zfunction.hpp"

namespace fs = std::filesystem;
using namespace zfn;

namespace {

std::string g_cli_path = "./zfn";

void require(bool condition, const std::string& what) {
    if (!condition) throw CheckFailure(what);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

// --- criteria -------------------------------------------------------------

std::string criterion_oracle_equivalence() {
    for (uint64_t n = 1; n <= 10000; ++n) {
        const uint64_t fast = z_fast(n);
        const uint64_t naive = z_naive(n);
        require(fast == naive, "z_fast(" + std::to_string(n) + ") = " +
                                   std::to_string(fast) + " != z_naive = " +
                                   std::to_string(naive));
    }
    return "z_fast = z_naive for all n <= 10^4";
}

std::string criterion_elementary_properties() {
    const auto report = check_z_properties(100000);
    const uint64_t pow2 = check_power_of_two_closed_form(39);  // all 2^k < 2^40
    const uint64_t oddpp = check_odd_prime_power_closed_forms(1000000);
    std::ostringstream os;
    os << "identities (1)-(4) to n=1e5 (" << report.sqrt_checks << "+"
       << report.upper_bound_checks << "+" << report.odd_prime_checks << "+"
       << report.triangular_checks << " checks), closed forms: " << pow2
       << " powers of two, " << oddpp << " odd prime power cases";
    return os.str();
}

std::string criterion_harmonic_bounds() {
    const auto h = verify_harmonic_bounds(1000000);
    const auto w = verify_weighted_log_bounds(1000000);
    std::ostringstream os;
    os << "harmonic bounds to n=1e6 (H=" << format_real(h.final_value)
       << "), log-weighted bounds on [4,1e6] (sum=" << format_real(w.final_value)
       << ")";
    return os.str();
}

std::string criterion_divisor_bounds() {
    const auto report = verify_divisor_avg_bounds(1000000);
    require(report.n_checked == 999999, "prefix pass incomplete");
    std::ostringstream os;
    os << "sum d(m)/m < 7(log n)^2 on [2,1e6]; sharper 2(log n)^2 for n>=8: "
       << (report.sharper_holds_from_8 ? "holds" : "does not hold")
       << "; n=7 sum=" << format_real(report.value_at_7) << " under 2(log 7)^2: "
       << (report.sharper_holds_at_7 ? "yes" : "no");
    return os.str();
}

std::string criterion_band_chain() {
    const ZTable table = ZTable::build(band_upper(13));
    uint64_t combos = 0;
    for (uint64_t t = 5; t <= 13; ++t) {
        for (int b = 55; b <= 95; b += 5) {
            const double beta = b / 100.0;
            const double y = std::exp(beta * static_cast<double>(t));
            const auto chain = check_band_chain(t, y, table);
            require(chain.chain_ok, "chain broke at t=" + std::to_string(t));
            ++combos;
        }
    }
    const auto spot12 = count_small_z(5, 12.0, table);
    require(spot12.count == 3, "count_small_z(5, 12) = " +
                                   std::to_string(spot12.count) + ", expected 3");
    const auto spot16 = count_small_z(5, 16.0, table);
    require(spot16.count == 9, "count_small_z(5, 16) = " +
                                   std::to_string(spot16.count) + ", expected 9");
    return "count <= 7Y sum d(k)/k <= 196Yt^2 for " + std::to_string(combos) +
           " (t, Y) pairs, table to " + std::to_string(band_upper(13)) +
           "; spot counts 3 and 9 reproduced";
}

std::string criterion_ratio_witnesses() {
    for (uint64_t l = 1; l <= 10; ++l) {
        const auto up = ratio_up_witness(Rational(l, 1), 1000000);
        const auto vu = validate_witness(up);
        require(vu.ok, "ratio-up L=" + std::to_string(l) + ": " + vu.failed_check);
        const auto down = ratio_down_witness(Rational(l, 1), 1000000);
        const auto vd = validate_witness(down);
        require(vd.ok, "ratio-down L=" + std::to_string(l) + ": " + vd.failed_check);
    }
    return "ratio-up and ratio-down witnesses validate for integer L in [1,10]";
}

std::string criterion_quotient_witnesses() {
    for (uint64_t k = 2; k <= 100; ++k) {
        const auto w = quotient_witness(k, 1000000);
        const auto v = validate_witness(w);
        require(v.ok, "quotient k=" + std::to_string(k) + ": " + v.failed_check);
        require(w.z_n == w.p && w.n == w.k * w.z_n,
                "quotient not exact at k=" + std::to_string(k));
    }
    return "n/Z(n) = k exactly for every k in [2,100]";
}

std::string criterion_doubling_witnesses() {
    for (uint64_t b = 1; b <= 10; ++b) {
        const auto w = doubling_witness(Rational(b, 1), 1000000);
        const auto v = validate_witness(w);
        require(v.ok, "doubling B=" + std::to_string(b) + ": " + v.failed_check);
        require(w.z_2n + 1 >= w.p * ((uint64_t{1} << w.k) - 1),
                "z_2n lower bound failed at B=" + std::to_string(b));
    }
    return "doubling witnesses validate for integer B in [1,10], including "
           "z_2n >= p(2^k - 1) - 1";
}

std::string criterion_series_diagnostics() {
    const ZTable table = ZTable::build(1000000);
    const auto s10 = partial_zeta_z(10, 2.0, table);
    const double first = s10.checkpoints.front().partial_sum;
    require(std::fabs(first - 1.665478) <= 1e-5,
            "S(10, 2) = " + format_real(first) + ", expected 1.665478 +- 1e-5");
    std::ostringstream os;
    os << "S(10,2)=" << format_real(first);
    for (const double alpha : {2.0, 1.5}) {
        const auto diag = partial_zeta_z(1000000, alpha, table);
        require(diag.checkpoints.size() == 6, "expected checkpoints 10..1e6");
        for (size_t i = 1; i < diag.checkpoints.size(); ++i)
            require(diag.checkpoints[i].partial_sum >
                        diag.checkpoints[i - 1].partial_sum,
                    "partial sums not strictly increasing");
        // decade increments from 1e3 on must strictly decrease
        double prev = 0.0;
        for (size_t i = 3; i < diag.checkpoints.size(); ++i) {
            const double inc = diag.checkpoints[i].partial_sum -
                               diag.checkpoints[i - 1].partial_sum;
            if (i > 3)
                require(inc < prev, "decade increments not decreasing at alpha=" +
                                        format_real(alpha));
            prev = inc;
        }
        os << "; alpha=" << format_real(alpha) << " S(1e6)="
           << format_real(diag.checkpoints.back().partial_sum)
           << " increments decay";
    }
    return os.str();
}

std::string criterion_cache_determinism() {
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    const fs::path one = dir / ("zfn_accept_" + tag + "_t1.ztab");
    const fs::path eight = dir / ("zfn_accept_" + tag + "_t8.ztab");
    const std::string base = g_cli_path + " table --max 100000 --out ";
    require(run_command(base + one.string() + " --threads 1 > /dev/null") == 0,
            "single-thread table run failed (cli: " + g_cli_path + ")");
    require(run_command(base + eight.string() + " --threads 8 > /dev/null") == 0,
            "eight-thread table run failed");
    const std::string a = read_file(one);
    const std::string b = read_file(eight);
    fs::remove(one);
    fs::remove(eight);
    require(!a.empty() && a.size() == 16 + 8 * 100000, "unexpected cache size");
    require(a == b, "cache files differ between 1 and 8 threads");
    return "table --max 100000 cache bytewise identical at 1 and 8 threads";
}

struct Criterion {
    int id;
    const char* label;
    std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
    }

    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence", criterion_oracle_equivalence},
        {2, "elementary Z identities", criterion_elementary_properties},
        {3, "harmonic / log-weighted bounds", criterion_harmonic_bounds},
        {4, "divisor average bound", criterion_divisor_bounds},
        {5, "band counting chain", criterion_band_chain},
        {6, "consecutive-ratio witnesses", criterion_ratio_witnesses},
        {7, "quotient witnesses", criterion_quotient_witnesses},
        {8, "doubling witnesses", criterion_doubling_witnesses},
        {9, "series diagnostics", criterion_series_diagnostics},
        {10, "cache determinism", criterion_cache_determinism},
    };

    int passed = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.2f", seconds);
        std::cout << "criterion " << criterion.id << ' ' << (ok ? "PASS" : "FAIL")
                  << " [" << timing << " s] " << criterion.label << ": " << detail
                  << '\n';
        if (ok) ++passed;
    }
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
