#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "zfn/analytic_bounds.hpp"
#include "zfn/core_arith.hpp"
#include "zfn/rational.hpp"
#include "zfn/witness_search.hpp"
#include "zfn/zfunction.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { text, csv, jsonl };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "jsonl") return Format::jsonl;
    throw UsageError("unknown format '" + s + "' (expected text, csv or jsonl)");
}

unsigned default_threads() {
    if (const char* env = std::getenv("ZFN_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

std::pair<uint64_t, uint64_t> parse_t_range(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos)
        throw UsageError("t-range must look like A..B, got '" + s + "'");
    try {
        const uint64_t a = std::stoull(s.substr(0, pos));
        const uint64_t b = std::stoull(s.substr(pos + 2));
        if (a > b) throw UsageError("t-range must have A <= B");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw UsageError("t-range must look like A..B, got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("t-range value out of range in '" + s + "'");
    }
}

std::vector<double> parse_betas(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("betas must be comma-separated reals, got '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("betas list is empty");
    return out;
}

zfn::Rational parse_rational_arg(const std::string& s, const char* flag) {
    try {
        return zfn::Rational::parse(s);
    } catch (const zfn::DomainError& e) {
        throw UsageError(std::string(flag) + " expects N or N/D: " + e.what());
    }
}

// Output sink: stdout by default, --out redirects the stream.
class Sink {
public:
    void open(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::trunc);
        if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// The beta grid the certification sweeps use: 0.55, 0.60, ..., 0.95.
std::vector<double> beta_grid() {
    std::vector<double> grid;
    for (int i = 55; i <= 95; i += 5) grid.push_back(i / 100.0);
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zfn: exact toolkit for Z(n) = min{m >= 1 : n | T(m)}"};
    app.require_subcommand(1);

    std::string format_name = "text";
    std::string out_path;
    unsigned threads = default_threads();

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "output format: text, csv or jsonl");
        sub->add_option("--out", out_path, "write output to this file");
        sub->add_option("--threads", threads, "worker threads for table builds")
            ->check(CLI::Range(1u, 1024u));
    };

    // z <n>
    uint64_t z_arg = 0;
    auto* cmd_z = app.add_subcommand("z", "evaluate Z(n)");
    cmd_z->add_option("n", z_arg, "argument n >= 1")->required();
    add_common(cmd_z);

    // table --max N [--out FILE] [--cache FILE]
    uint64_t table_max = 0;
    std::string table_cache;
    auto* cmd_table = app.add_subcommand("table", "build a Z table, optionally cached");
    cmd_table->add_option("--max", table_max, "table covers 1..N")->required();
    cmd_table->add_option("--cache", table_cache, "cache file: load if valid, else build and write");
    add_common(cmd_table);

    // witness {ratio-up|ratio-down|quotient|doubling}
    auto* cmd_witness = app.add_subcommand("witness", "construct and verify an extremal witness");
    cmd_witness->require_subcommand(1);
    std::string target_arg;
    uint64_t quotient_k = 0;
    uint64_t t_max = zfn::kDefaultProgressionLimit;
    auto* w_up = cmd_witness->add_subcommand("ratio-up", "Z(n+1)/Z(n) > L");
    w_up->add_option("--L", target_arg, "target ratio, N or N/D")->required();
    w_up->add_option("--t-max", t_max, "progression search bound");
    add_common(w_up);
    auto* w_down = cmd_witness->add_subcommand("ratio-down", "Z(n-1)/Z(n) > L");
    w_down->add_option("--L", target_arg, "target ratio, N or N/D")->required();
    w_down->add_option("--t-max", t_max, "progression search bound");
    add_common(w_down);
    auto* w_quot = cmd_witness->add_subcommand("quotient", "n/Z(n) = k");
    w_quot->add_option("--k", quotient_k, "target quotient k >= 2")->required();
    w_quot->add_option("--t-max", t_max, "progression search bound");
    add_common(w_quot);
    auto* w_doub = cmd_witness->add_subcommand("doubling", "Z(2n)/Z(n) > B");
    w_doub->add_option("--B", target_arg, "target ratio, N or N/D")->required();
    w_doub->add_option("--t-max", t_max, "progression search bound");
    add_common(w_doub);

    // verify {lemma1|lemma4|lemma5|lemma6|thm4}
    auto* cmd_verify = app.add_subcommand("verify", "run a certification sweep");
    cmd_verify->require_subcommand(1);
    uint64_t verify_max = 0;
    std::string t_range_arg;
    auto* v_l1 = cmd_verify->add_subcommand("lemma1", "elementary Z identities up to --max");
    v_l1->add_option("--max", verify_max, "sweep bound")->required();
    add_common(v_l1);
    auto* v_l4 = cmd_verify->add_subcommand("lemma4", "harmonic and log-weighted sum bounds");
    v_l4->add_option("--max", verify_max, "sweep bound")->required();
    add_common(v_l4);
    auto* v_l5 = cmd_verify->add_subcommand("lemma5", "divisor average sum bound");
    v_l5->add_option("--max", verify_max, "sweep bound")->required();
    add_common(v_l5);
    auto* v_l6 = cmd_verify->add_subcommand("lemma6", "band counting chain over a t range");
    v_l6->add_option("--t-range", t_range_arg, "bands A..B (t >= 5)")->required();
    add_common(v_l6);
    auto* v_t4 = cmd_verify->add_subcommand("thm4", "Z(n) < n^beta band counts over a t range");
    v_t4->add_option("--t-range", t_range_arg, "bands A..B (t >= 5)")->required();
    add_common(v_t4);

    // series --alpha A --max N [--cache FILE]
    double alpha = 0.0;
    uint64_t series_max = 0;
    std::string series_cache;
    auto* cmd_series = app.add_subcommand("series", "partial sums of sum 1/Z(n)^alpha");
    cmd_series->add_option("--alpha", alpha, "exponent alpha >= 0")->required();
    cmd_series->add_option("--max", series_max, "sum up to N")->required();
    cmd_series->add_option("--cache", series_cache, "table cache file");
    add_common(cmd_series);

    // decompose --t T --alpha A --betas B1,B2,...
    uint64_t decompose_t = 0;
    std::string betas_arg;
    auto* cmd_decompose =
        app.add_subcommand("decompose", "split a band into B/C classes by Z(n) vs n^beta");
    cmd_decompose->add_option("--t", decompose_t, "band index t >= 5")->required();
    cmd_decompose->add_option("--alpha", alpha, "exponent alpha > 0")->required();
    cmd_decompose->add_option("--betas", betas_arg, "chain 1,...,0.5")->required();
    add_common(cmd_decompose);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Format format = parse_format(format_name);
        Sink sink;

        if (*cmd_z) {
            if (format != Format::text) throw UsageError("z supports --format text only");
            sink.open(out_path);
            sink.out() << z_arg << ' ' << zfn::z_fast(z_arg) << '\n';
            return 0;
        }

        if (*cmd_table) {
            if (format != Format::text) throw UsageError("table supports --format text only");
            bool from_cache = false;
            const zfn::ZTable table =
                table_cache.empty()
                    ? zfn::ZTable::build(table_max, threads)
                    : zfn::ZTable::load_or_build(table_cache, table_max, threads, &from_cache);
            if (!out_path.empty()) table.save_prefix(table_max, out_path);
            std::cout << "table n_max=" << table_max
                      << " source=" << (from_cache ? "cache" : "built");
            if (!table_cache.empty()) std::cout << " cache=" << table_cache;
            if (!out_path.empty()) std::cout << " out=" << out_path;
            std::cout << '\n';
            return 0;
        }

        if (*cmd_witness) {
            if (format == Format::csv)
                throw UsageError("witness supports --format text or jsonl");
            sink.open(out_path);
            const auto emit = [&](const auto& w) {
                if (const auto v = zfn::validate_witness(w); !v.ok) {
                    std::cerr << "witness validation failed: " << v.failed_check << '\n';
                    return 1;
                }
                sink.out() << (format == Format::jsonl ? zfn::to_jsonl(w) : zfn::to_text(w))
                           << '\n';
                return 0;
            };
            if (*w_up)
                return emit(zfn::ratio_up_witness(parse_rational_arg(target_arg, "--L"), t_max));
            if (*w_down)
                return emit(zfn::ratio_down_witness(parse_rational_arg(target_arg, "--L"), t_max));
            if (*w_quot) return emit(zfn::quotient_witness(quotient_k, t_max));
            return emit(zfn::doubling_witness(parse_rational_arg(target_arg, "--B"), t_max));
        }

        if (*cmd_verify) {
            if (*v_l1 || *v_l4 || *v_l5) {
                if (format != Format::text)
                    throw UsageError("this verify subcommand supports --format text only");
                sink.open(out_path);
                auto& os = sink.out();
                if (*v_l1) {
                    const auto report = zfn::check_z_properties(verify_max);
                    os << "lemma1 (1) Z(T(m))=m checks=" << report.triangular_checks
                       << " PASS\n";
                    os << "lemma1 (2) sqrt(n)<Z(n) checks=" << report.sqrt_checks
                       << " PASS\n";
                    os << "lemma1 (3) Z(n)<=2n-1 checks=" << report.upper_bound_checks
                       << " PASS\n";
                    os << "lemma1 (4) Z(n)>=p-1 checks=" << report.odd_prime_checks
                       << " PASS\n";
                    uint64_t k_max = 0;
                    while (k_max + 1 <= 62 && (uint64_t{1} << (k_max + 1)) <= verify_max)
                        ++k_max;
                    os << "lemma1 (5) Z(2^k) closed form checks="
                       << zfn::check_power_of_two_closed_form(k_max) << " PASS\n";
                    os << "lemma1 (6) Z(p^k), Z(2p^k) closed forms checks="
                       << zfn::check_odd_prime_power_closed_forms(verify_max + 1)
                       << " PASS\n";
                } else if (*v_l4) {
                    const auto h = zfn::verify_harmonic_bounds(verify_max);
                    os << "lemma4 harmonic n=[1," << verify_max << "] H(n_max)="
                       << zfn::format_real(h.final_value) << " PASS\n";
                    const auto w = zfn::verify_weighted_log_bounds(verify_max);
                    os << "lemma4 log-weighted n=[4," << verify_max << "] sum="
                       << zfn::format_real(w.final_value) << " PASS\n";
                } else {
                    const auto report = zfn::verify_divisor_avg_bounds(verify_max);
                    os << "lemma5 stated 7(log n)^2 n=[2," << verify_max << "] sum="
                       << zfn::format_real(report.final_value) << " PASS\n";
                    os << "lemma5 observed 2(log n)^2 for n>=8: "
                       << (report.sharper_holds_from_8 ? "holds" : "fails") << '\n';
                    os << "lemma5 n=7 sum=" << zfn::format_real(report.value_at_7)
                       << " under 2(log 7)^2: " << (report.sharper_holds_at_7 ? "yes" : "no")
                       << '\n';
                }
                return 0;
            }
            // lemma6 / thm4 need a table over the requested bands
            if (format == Format::jsonl)
                throw UsageError("verify supports --format text or csv");
            const auto [t_lo, t_hi] = parse_t_range(t_range_arg);
            if (t_lo < 5) throw UsageError("t-range must start at t >= 5");
            sink.open(out_path);
            auto& os = sink.out();
            const zfn::ZTable table = zfn::ZTable::build(zfn::band_upper(t_hi), threads);
            if (format == Format::csv) os << zfn::band_count_csv_header() << '\n';
            for (uint64_t t = t_lo; t <= t_hi; ++t) {
                for (const double beta : beta_grid()) {
                    if (*v_l6) {
                        const double y = std::exp(beta * static_cast<double>(t));
                        const auto chain = zfn::check_band_chain(t, y, table);
                        if (format == Format::csv) {
                            os << zfn::to_csv(chain.band) << '\n';
                        } else {
                            os << "lemma6 t=" << t << " beta=" << zfn::format_real(beta)
                               << " Y=" << zfn::format_real(y)
                               << " count=" << chain.band.count << " quadruple_sum="
                               << zfn::format_real(chain.bounds.quadruple_sum)
                               << " mid=" << zfn::format_real(chain.bounds.mid_bound)
                               << " final=" << zfn::format_real(chain.bounds.final_bound)
                               << " PASS\n";
                        }
                    } else {
                        const auto row = zfn::count_small_z_beta(t, beta, table);
                        if (format == Format::csv) {
                            os << zfn::to_csv(row) << '\n';
                        } else {
                            os << "thm4 t=" << t << " beta=" << zfn::format_real(beta)
                               << " count=" << row.count
                               << " bound=" << zfn::format_real(row.bound) << " PASS\n";
                        }
                    }
                }
            }
            return 0;
        }

        if (*cmd_series) {
            if (format == Format::jsonl)
                throw UsageError("series supports --format text or csv");
            sink.open(out_path);
            auto& os = sink.out();
            const zfn::ZTable table =
                series_cache.empty()
                    ? zfn::ZTable::build(series_max, threads)
                    : zfn::ZTable::load_or_build(series_cache, series_max, threads);
            const auto diag = zfn::partial_zeta_z(series_max, alpha, table);
            if (format == Format::csv) {
                os << zfn::series_csv_header() << '\n' << zfn::to_csv_rows(diag) << '\n';
            } else {
                for (const auto& cp : diag.checkpoints)
                    os << "series alpha=" << zfn::format_real(diag.alpha) << " N=" << cp.n
                       << " sum=" << zfn::format_real(cp.partial_sum) << '\n';
            }
            return 0;
        }

        // decompose
        if (format == Format::jsonl)
            throw UsageError("decompose supports --format text or csv");
        const auto betas = parse_betas(betas_arg);
        sink.open(out_path);
        auto& os = sink.out();
        const zfn::ZTable table = zfn::ZTable::build(zfn::band_upper(decompose_t), threads);
        const auto dec = zfn::class_decomposition(decompose_t, alpha, betas, table);
        if (format == Format::csv) {
            os << zfn::band_count_csv_header() << '\n';
            for (const auto& cls : dec.classes) {
                const zfn::BandCount row{dec.t, zfn::ThresholdKind::beta, cls.beta_upper,
                                         cls.count, cls.bound, cls.pass};
                os << zfn::to_csv(row) << '\n';
            }
        } else {
            os << "decompose t=" << dec.t << " alpha=" << zfn::format_real(dec.alpha)
               << " band=(" << dec.band_lo << ',' << dec.band_hi << "] size="
               << dec.band_size << " ties=" << dec.tie_count << '\n';
            os << "class B z>n^" << zfn::format_real(dec.top.beta_lower)
               << " count=" << dec.top.count
               << " contribution=" << zfn::format_real(dec.top.contribution)
               << " bound=" << zfn::format_real(dec.top.bound)
               << (dec.top.pass ? " PASS" : " FAIL") << '\n';
            for (const auto& cls : dec.classes) {
                os << "class C" << cls.index << " n^" << zfn::format_real(cls.beta_lower)
                   << "<z<n^" << zfn::format_real(cls.beta_upper)
                   << " count=" << cls.count
                   << " contribution=" << zfn::format_real(cls.contribution)
                   << " bound=" << zfn::format_real(cls.bound)
                   << (cls.pass ? " PASS" : " FAIL") << '\n';
            }
            os << "partition " << (dec.band_size == 0 ? "EMPTY" : "PASS") << '\n';
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const zfn::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
