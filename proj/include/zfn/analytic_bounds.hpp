#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zfn/zfunction.hpp"

namespace zfn {

// Numeric certification of the summation bounds and band-counting estimates
// used in the convergence analysis of sum 1/Z(n)^alpha. All inequality
// assertions compare a double against its bound with a relative slack of
// 1e-9: the bounds hold with enormous margins, so the slack can only absorb
// rounding, never flip a genuine failure.

/// H(n) = sum_{m<=n} 1/m, summed in increasing m; asserts
/// log n <= H(n) <= 1 + log n.
double harmonic_sum(uint64_t n);

/// sum_{m<=n} log(m)/m for n >= 4; asserts
/// (log n)^2/2 - 0.257 <= sum <= (log n)^2/2 + 0.110.
double weighted_log_sum(uint64_t n);

/// sum_{m<=n} d(m)/m for n >= 2, accumulated as the divisor-pair double
/// loop sum_{d<=n} (1/d) sum_{e<=n/d} 1/e; asserts sum < 7 (log n)^2.
double divisor_avg_sum(uint64_t n);

struct SweepReport {
    uint64_t n_checked = 0;
    double final_value = 0.0;
};

// Full-range certifications with running sums; throw CheckFailure naming
// the first n where a bound fails.
SweepReport verify_harmonic_bounds(uint64_t n_max);
SweepReport verify_weighted_log_bounds(uint64_t n_max);

struct DivisorSweepReport {
    uint64_t n_checked = 0;
    double final_value = 0.0;
    // observations beyond the stated 7(log n)^2 bound:
    bool sharper_holds_from_8 = false;  // sum < 2(log n)^2 for all 8 <= n <= n_max
    double value_at_7 = 0.0;
    bool sharper_holds_at_7 = false;
};

DivisorSweepReport verify_divisor_avg_bounds(uint64_t n_max);

// Integer band (floor(e^(t-1)), floor(e^t)].
uint64_t band_lower(uint64_t t);
uint64_t band_upper(uint64_t t);

enum class ThresholdKind { y, beta };

struct BandCount {
    uint64_t t = 0;
    ThresholdKind kind = ThresholdKind::y;
    double threshold = 0.0;
    uint64_t count = 0;
    double bound = 0.0;
    bool pass = false;
};

/// Count of n in the band with Z(n) <= Y; asserts count <= 196 Y t^2.
/// Requires t >= 5 and e^((t-1)/2) < Y < e^t.
BandCount count_small_z(uint64_t t, double y, const ZTable& table);

struct ProofBounds {
    double k_limit = 0.0;        // K = 2 Y^2 / e^(t-1)
    double quadruple_sum = 0.0;  // sum_{2<=k<=K} 7 Y d(k)/k
    double mid_bound = 0.0;      // 49 Y (log K)^2
    double final_bound = 0.0;    // 196 Y t^2
};

/// The intermediate overcount chain for the same (t, Y); asserts
/// quadruple_sum <= mid_bound <= final_bound.
ProofBounds proof_bound_estimate(uint64_t t, double y);

struct BandChain {
    BandCount band;
    ProofBounds bounds;
    bool chain_ok = false;  // count <= quadruple_sum <= mid <= final
};

/// Observed count against the full chain; asserts every link.
BandChain check_band_chain(uint64_t t, double y, const ZTable& table);

/// Count of n in the band with Z(n) < n^beta for beta in (1/2, 1);
/// asserts count <= 196 t^2 e^(beta t).
BandCount count_small_z_beta(uint64_t t, double beta, const ZTable& table);

struct SeriesCheckpoint {
    uint64_t n = 0;
    double partial_sum = 0.0;
};

struct SeriesDiagnostic {
    double alpha = 0.0;
    std::vector<SeriesCheckpoint> checkpoints;  // at 10, 100, ..., and n_limit
};

/// Partial sums of sum_{n<=N} 1/Z(n)^alpha, summed in increasing n.
SeriesDiagnostic partial_zeta_z(uint64_t n_limit, double alpha, const ZTable& table);

struct ClassBand {
    int index = 0;  // 0 for B_t, j >= 1 for C_t(j)
    double beta_upper = 0.0;
    double beta_lower = 0.0;
    uint64_t count = 0;
    double bound = 0.0;  // count bound for C_t(j); contribution bound for B_t
    double contribution = 0.0;  // sum over the class of 1/Z(n)^alpha
    bool pass = false;
};

struct ClassDecomposition {
    uint64_t t = 0;
    double alpha = 0.0;
    std::vector<double> betas;
    uint64_t band_lo = 0;  // band is (band_lo, band_hi]
    uint64_t band_hi = 0;
    uint64_t band_size = 0;
    uint64_t tie_count = 0;  // n with Z(n) equal to some n^beta_j in doubles
    ClassBand top;           // B_t: Z(n) above n^beta_1
    std::vector<ClassBand> classes;  // C_t(j): n^beta_(j+1) < Z(n) < n^beta_j
};

/// Partition the band by how Z(n) compares to the powers n^beta_j. The
/// chain must satisfy beta_0 = 1 > beta_1 > ... > beta_r = 1/2 with
/// beta_j < alpha * beta_(j+1) for every j; otherwise InvalidChainError.
/// Boundary equalities go to the class with smaller Z values, except at
/// beta_1 where they go to B_t; every n is assigned and counted.
ClassDecomposition class_decomposition(uint64_t t, double alpha,
                                       const std::vector<double>& betas,
                                       const ZTable& table);

// CSV export. Reals print at 15 significant digits.
std::string band_count_csv_header();  // t,threshold_kind,threshold,count,bound,pass
std::string to_csv(const BandCount& row);
std::string series_csv_header();  // alpha,N,partial_sum
std::string to_csv_rows(const SeriesDiagnostic& diag);

/// Double formatted at 15 significant digits.
std::string format_real(double v);

}  // namespace zfn
