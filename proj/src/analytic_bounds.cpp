#include "zfn/analytic_bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace zfn {

namespace {

constexpr double kRelSlack = 1e-9;

bool leq_slack(double x, double bound) {
    return x <= bound + (std::fabs(bound) + 1.0) * kRelSlack;
}

bool geq_slack(double x, double bound) {
    return x >= bound - (std::fabs(bound) + 1.0) * kRelSlack;
}

[[noreturn]] void bound_failure(const std::string& what, uint64_t n, double value,
                                double bound) {
    throw CheckFailure(what + " fails at n=" + std::to_string(n) + ": value " +
                       format_real(value) + " vs bound " + format_real(bound));
}

void check_harmonic_at(uint64_t n, double sum) {
    const double ln = std::log(static_cast<double>(n));
    if (!geq_slack(sum, ln)) bound_failure("log n <= H(n)", n, sum, ln);
    if (!leq_slack(sum, 1.0 + ln)) bound_failure("H(n) <= 1 + log n", n, sum, 1.0 + ln);
}

void check_weighted_at(uint64_t n, double sum) {
    const double ln = std::log(static_cast<double>(n));
    const double half_sq = 0.5 * ln * ln;
    if (!geq_slack(sum, half_sq - 0.257))
        bound_failure("(log n)^2/2 - 0.257 <= sum", n, sum, half_sq - 0.257);
    if (!leq_slack(sum, half_sq + 0.110))
        bound_failure("sum <= (log n)^2/2 + 0.110", n, sum, half_sq + 0.110);
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

double harmonic_sum(uint64_t n) {
    if (n == 0) throw DomainError("harmonic_sum: n must be >= 1");
    double sum = 0.0;
    for (uint64_t m = 1; m <= n; ++m) sum += 1.0 / static_cast<double>(m);
    check_harmonic_at(n, sum);
    return sum;
}

double weighted_log_sum(uint64_t n) {
    if (n < 4) throw DomainError("weighted_log_sum: n must be >= 4");
    double sum = 0.0;
    for (uint64_t m = 2; m <= n; ++m) {
        const double md = static_cast<double>(m);
        sum += std::log(md) / md;
    }
    check_weighted_at(n, sum);
    return sum;
}

double divisor_avg_sum(uint64_t n) {
    if (n < 2) throw DomainError("divisor_avg_sum: n must be >= 2");
    // sum_{d<=n} (1/d) * H(floor(n/d)); each divisor pair d*e <= n lands once
    double total = 0.0;
    for (uint64_t d = 1; d <= n; ++d) {
        const uint64_t q = n / d;
        double inner = 0.0;
        for (uint64_t e = 1; e <= q; ++e) inner += 1.0 / static_cast<double>(e);
        total += inner / static_cast<double>(d);
    }
    const double ln = std::log(static_cast<double>(n));
    if (!leq_slack(total, 7.0 * ln * ln))
        bound_failure("sum d(m)/m < 7(log n)^2", n, total, 7.0 * ln * ln);
    return total;
}

SweepReport verify_harmonic_bounds(uint64_t n_max) {
    if (n_max == 0) throw DomainError("verify_harmonic_bounds: n_max must be >= 1");
    double sum = 0.0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        sum += 1.0 / static_cast<double>(n);
        check_harmonic_at(n, sum);
    }
    return {n_max, sum};
}

SweepReport verify_weighted_log_bounds(uint64_t n_max) {
    if (n_max < 4) throw DomainError("verify_weighted_log_bounds: n_max must be >= 4");
    double sum = std::log(2.0) / 2.0 + std::log(3.0) / 3.0;
    uint64_t checked = 0;
    for (uint64_t n = 4; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        sum += std::log(nd) / nd;
        check_weighted_at(n, sum);
        ++checked;
    }
    return {checked, sum};
}

DivisorSweepReport verify_divisor_avg_bounds(uint64_t n_max) {
    if (n_max < 2) throw DomainError("verify_divisor_avg_bounds: n_max must be >= 2");
    std::vector<uint32_t> divisors(n_max + 1, 0);
    for (uint64_t d = 1; d <= n_max; ++d) {
        for (uint64_t m = d; m <= n_max; m += d) ++divisors[m];
    }
    DivisorSweepReport report;
    report.sharper_holds_from_8 = true;
    double sum = 1.0;  // d(1)/1
    for (uint64_t n = 2; n <= n_max; ++n) {
        sum += static_cast<double>(divisors[n]) / static_cast<double>(n);
        const double ln = std::log(static_cast<double>(n));
        if (!leq_slack(sum, 7.0 * ln * ln))
            bound_failure("sum d(m)/m < 7(log n)^2", n, sum, 7.0 * ln * ln);
        if (n >= 8 && sum >= 2.0 * ln * ln) report.sharper_holds_from_8 = false;
        if (n == 7) {
            report.value_at_7 = sum;
            report.sharper_holds_at_7 = sum < 2.0 * ln * ln;
        }
        ++report.n_checked;
    }
    report.final_value = sum;
    return report;
}

uint64_t band_lower(uint64_t t) {
    return static_cast<uint64_t>(std::exp(static_cast<double>(t - 1)));
}

uint64_t band_upper(uint64_t t) {
    return static_cast<uint64_t>(std::exp(static_cast<double>(t)));
}

namespace {

void require_band_preconditions(uint64_t t, double y) {
    if (t < 5) throw DomainError("band count: t must be >= 5");
    const double td = static_cast<double>(t);
    if (!(y > std::exp((td - 1.0) / 2.0) && y < std::exp(td)))
        throw DomainError("band count: Y must satisfy e^((t-1)/2) < Y < e^t");
}

void require_coverage(uint64_t t, const ZTable& table) {
    if (table.n_max() < band_upper(t))
        throw CoverageError("band count: table must cover " +
                            std::to_string(band_upper(t)));
}

}  // namespace

BandCount count_small_z(uint64_t t, double y, const ZTable& table) {
    require_band_preconditions(t, y);
    require_coverage(t, table);
    const uint64_t lo = band_lower(t);
    const uint64_t hi = band_upper(t);
    uint64_t count = 0;
    for (uint64_t n = lo + 1; n <= hi; ++n) {
        if (static_cast<double>(table.z(n)) <= y) ++count;
    }
    const double td = static_cast<double>(t);
    const double bound = 196.0 * y * td * td;
    BandCount row{t, ThresholdKind::y, y, count, bound,
                  leq_slack(static_cast<double>(count), bound)};
    if (!row.pass)
        bound_failure("band count <= 196 Y t^2", t, static_cast<double>(count), bound);
    return row;
}

ProofBounds proof_bound_estimate(uint64_t t, double y) {
    require_band_preconditions(t, y);
    const double td = static_cast<double>(t);
    const double k_limit = 2.0 * y * y / std::exp(td - 1.0);
    const auto k_floor = static_cast<uint64_t>(k_limit);
    // d(k) for k <= floor(K) by direct divisor sieve
    std::vector<uint32_t> divisors(k_floor + 1, 0);
    for (uint64_t d = 1; d <= k_floor; ++d) {
        for (uint64_t m = d; m <= k_floor; m += d) ++divisors[m];
    }
    double quadruple_sum = 0.0;
    for (uint64_t k = 2; k <= k_floor; ++k)
        quadruple_sum += 7.0 * y * static_cast<double>(divisors[k]) / static_cast<double>(k);
    const double log_k = std::log(k_limit);
    ProofBounds bounds{k_limit, quadruple_sum, 49.0 * y * log_k * log_k,
                       196.0 * y * td * td};
    if (!leq_slack(bounds.quadruple_sum, bounds.mid_bound))
        bound_failure("quadruple_sum <= 49 Y (log K)^2", t, bounds.quadruple_sum,
                      bounds.mid_bound);
    if (!leq_slack(bounds.mid_bound, bounds.final_bound))
        bound_failure("49 Y (log K)^2 <= 196 Y t^2", t, bounds.mid_bound,
                      bounds.final_bound);
    return bounds;
}

BandChain check_band_chain(uint64_t t, double y, const ZTable& table) {
    BandChain chain;
    chain.band = count_small_z(t, y, table);
    chain.bounds = proof_bound_estimate(t, y);
    chain.chain_ok =
        leq_slack(static_cast<double>(chain.band.count), chain.bounds.quadruple_sum);
    if (!chain.chain_ok)
        bound_failure("band count <= quadruple_sum", t,
                      static_cast<double>(chain.band.count), chain.bounds.quadruple_sum);
    return chain;
}

BandCount count_small_z_beta(uint64_t t, double beta, const ZTable& table) {
    if (t < 5) throw DomainError("band count: t must be >= 5");
    if (!(beta > 0.5 && beta < 1.0))
        throw DomainError("band count: beta must lie in (1/2, 1)");
    require_coverage(t, table);
    const uint64_t lo = band_lower(t);
    const uint64_t hi = band_upper(t);
    uint64_t count = 0;
    for (uint64_t n = lo + 1; n <= hi; ++n) {
        const double zd = static_cast<double>(table.z(n));
        if (zd < std::pow(static_cast<double>(n), beta)) ++count;
    }
    const double td = static_cast<double>(t);
    const double bound = 196.0 * td * td * std::exp(beta * td);
    BandCount row{t, ThresholdKind::beta, beta, count, bound,
                  leq_slack(static_cast<double>(count), bound)};
    if (!row.pass)
        bound_failure("band count <= 196 t^2 e^(beta t)", t,
                      static_cast<double>(count), bound);
    return row;
}

SeriesDiagnostic partial_zeta_z(uint64_t n_limit, double alpha, const ZTable& table) {
    if (n_limit == 0) throw DomainError("partial_zeta_z: N must be >= 1");
    if (!(alpha >= 0.0)) throw DomainError("partial_zeta_z: alpha must be >= 0");
    if (table.n_max() < n_limit)
        throw CoverageError("partial_zeta_z: table must cover " + std::to_string(n_limit));
    SeriesDiagnostic diag;
    diag.alpha = alpha;
    double sum = 0.0;
    uint64_t next_checkpoint = 10;
    for (uint64_t n = 1; n <= n_limit; ++n) {
        sum += 1.0 / std::pow(static_cast<double>(table.z(n)), alpha);
        if (n == next_checkpoint) {
            diag.checkpoints.push_back({n, sum});
            next_checkpoint *= 10;
        }
    }
    if (diag.checkpoints.empty() || diag.checkpoints.back().n != n_limit)
        diag.checkpoints.push_back({n_limit, sum});
    for (size_t i = 1; i < diag.checkpoints.size(); ++i) {
        if (!(diag.checkpoints[i].partial_sum > diag.checkpoints[i - 1].partial_sum))
            throw CheckFailure("partial sums not strictly increasing at N=" +
                               std::to_string(diag.checkpoints[i].n));
    }
    return diag;
}

ClassDecomposition class_decomposition(uint64_t t, double alpha,
                                       const std::vector<double>& betas,
                                       const ZTable& table) {
    if (t < 5) throw DomainError("class_decomposition: t must be >= 5");
    if (!(alpha > 0.0)) throw DomainError("class_decomposition: alpha must be > 0");
    if (betas.size() < 2) throw InvalidChainError("chain needs at least beta_0 and beta_1");
    if (betas.front() != 1.0) throw InvalidChainError("chain must start at beta_0 = 1");
    if (betas.back() != 0.5) throw InvalidChainError("chain must end at beta_r = 1/2");
    for (size_t j = 0; j + 1 < betas.size(); ++j) {
        if (!(betas[j] > betas[j + 1]))
            throw InvalidChainError("chain must be strictly decreasing");
        if (!(betas[j] < alpha * betas[j + 1]))
            throw InvalidChainError("chain needs beta_j < alpha * beta_(j+1) at j=" +
                                    std::to_string(j));
    }
    require_coverage(t, table);

    ClassDecomposition out;
    out.t = t;
    out.alpha = alpha;
    out.betas = betas;
    out.band_lo = band_lower(t);
    out.band_hi = band_upper(t);
    out.band_size = out.band_hi - out.band_lo;

    const size_t r = betas.size() - 1;
    out.top = ClassBand{0, 0.0, betas[1], 0, 0.0, 0.0, false};
    out.classes.reserve(r - 1);
    for (size_t j = 1; j < r; ++j)
        out.classes.push_back(ClassBand{static_cast<int>(j), betas[j], betas[j + 1],
                                        0, 0.0, 0.0, false});

    double top_bound = 0.0;  // sum over the band of n^(-alpha * beta_1)
    for (uint64_t n = out.band_lo + 1; n <= out.band_hi; ++n) {
        const double nd = static_cast<double>(n);
        const double zd = static_cast<double>(table.z(n));
        top_bound += 1.0 / std::pow(nd, alpha * betas[1]);

        for (size_t j = 1; j <= r; ++j) {
            if (zd == std::pow(nd, betas[j])) {
                ++out.tie_count;
                break;
            }
        }

        ClassBand* target = nullptr;
        if (zd >= std::pow(nd, betas[1])) {
            target = &out.top;  // ties at beta_1 go upward into B_t
        } else {
            for (size_t j = 1; j < r; ++j) {
                if (zd > std::pow(nd, betas[j + 1])) {
                    target = &out.classes[j - 1];
                    break;
                }
            }
            // Z(n) > sqrt(n) for n >= 2, so only a floating-point boundary
            // tie at beta_r can reach here; it belongs to the last class.
            if (target == nullptr)
                target = out.classes.empty() ? &out.top : &out.classes[r - 2];
        }
        ++target->count;
        target->contribution += 1.0 / std::pow(zd, alpha);
    }

    const double td = static_cast<double>(t);
    for (auto& cls : out.classes) {
        cls.bound = 196.0 * td * td * std::exp(cls.beta_upper * td);
        cls.pass = leq_slack(static_cast<double>(cls.count), cls.bound);
        if (!cls.pass)
            bound_failure("|C_t(j)| <= 196 t^2 e^(beta_j t)", t,
                          static_cast<double>(cls.count), cls.bound);
    }
    out.top.bound = top_bound;
    out.top.pass = leq_slack(out.top.contribution, top_bound);
    if (!out.top.pass)
        bound_failure("B_t contribution <= sum n^(-alpha beta_1)", t,
                      out.top.contribution, top_bound);

    uint64_t assigned = out.top.count;
    for (const auto& cls : out.classes) assigned += cls.count;
    if (assigned != out.band_size)
        throw CheckFailure("class decomposition does not partition the band at t=" +
                           std::to_string(t));
    return out;
}

std::string band_count_csv_header() { return "t,threshold_kind,threshold,count,bound,pass"; }

std::string to_csv(const BandCount& row) {
    std::ostringstream os;
    os << row.t << ',' << (row.kind == ThresholdKind::y ? "Y" : "beta") << ','
       << format_real(row.threshold) << ',' << row.count << ','
       << format_real(row.bound) << ',' << (row.pass ? 1 : 0);
    return os.str();
}

std::string series_csv_header() { return "alpha,N,partial_sum"; }

std::string to_csv_rows(const SeriesDiagnostic& diag) {
    std::ostringstream os;
    for (size_t i = 0; i < diag.checkpoints.size(); ++i) {
        if (i > 0) os << '\n';
        os << format_real(diag.alpha) << ',' << diag.checkpoints[i].n << ','
           << format_real(diag.checkpoints[i].partial_sum);
    }
    return os.str();
}

}  // namespace zfn
