// cli.hpp
// Command-line front end. run() takes argv (without the program name) and the
// output/error streams, so the whole surface can be driven from tests.
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 resource/coverage/IO error.

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/estimator.hpp"
#include "goldbach/harness.hpp"
#include "goldbach/pair_counter.hpp"
#include "goldbach/prime_engine.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace goldbach::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kResource = 3 };

enum class TwinConstantMode { Short, FullPrecision };

struct CliConfig {
    uint64_t sieve_limit = kDefaultSieveLimit;
    uint64_t segment_size = kDefaultSegmentSize;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::string> pi_cache_path;
    TwinConstantMode twin_constant_mode = TwinConstantMode::Short;
    bool extended = false;
};

inline constexpr const char* kPiCacheEnv = "GOLDBACH_PI_CACHE";

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CliConfig cfg;
    std::string twin_mode = "short";
    std::string pi_cache;

    CLI::App app{"Exact Goldbach-pair counts and their analytic estimates", "goldbach"};
    app.require_subcommand(1);
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--sieve-limit", cfg.sieve_limit, "largest integer the sieve may cover")
        ->check(CLI::Range(uint64_t{2}, UINT64_MAX / 4));
    app.add_option("--segment-size", cfg.segment_size, "integers per sieve segment")
        ->check(CLI::Range(uint64_t{64}, uint64_t{1} << 34));
    app.add_option("--pi-cache", pi_cache, "pi checkpoint cache file (env " + std::string(kPiCacheEnv) + ")");
    app.add_option("--twin-constant", twin_mode, "twin prime constant: short (0.66016) or full")
        ->check(CLI::IsMember({"short", "full"}));
    app.add_flag("--extended", cfg.extended, "allow extended-scale totals rows");

    uint64_t n = 0, m_limit = 0, start = 0, count = 0, x = 0;
    std::string range_name = "full", format_name = "csv", out_path = "-";
    bool corrected = false;
    std::vector<uint64_t> values;

    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--range", range_name, "full|reduced")->check(CLI::IsMember({"full", "reduced"}));
    };

    auto* count_cmd = app.add_subcommand("count", "exact Goldbach pairs (N-m, N+m)");
    count_cmd->add_option("N", n)->required();
    add_range(count_cmd);

    auto* estimate_cmd = app.add_subcommand("estimate", "analytic pair-count estimate for N");
    estimate_cmd->add_option("N", n)->required();
    add_range(estimate_cmd);
    estimate_cmd->add_flag("--corrected", corrected, "apply the U(N)^{3/2} correction");

    auto* gtot_cmd = app.add_subcommand("gtot", "pairs of odd primes p1 <= p2 with p1 + p2 <= M");
    gtot_cmd->add_option("M", m_limit)->required();

    auto* ndf_cmd = app.add_subcommand("ndf", "divisor factor of N");
    ndf_cmd->add_option("N", n)->required();

    auto* avg_cmd = app.add_subcommand("ndf-average", "mean divisor factor over [START, START+COUNT)");
    avg_cmd->add_option("START", start)->required();
    avg_cmd->add_option("COUNT", count)->required()->check(CLI::PositiveNumber);

    auto* unbalance_cmd = app.add_subcommand("unbalance", "U(N) and U(N)^{3/2}");
    unbalance_cmd->add_option("N", n)->required();
    add_range(unbalance_cmd);

    auto* pi_cmd = app.add_subcommand("pi", "exact prime count pi(X)");
    pi_cmd->add_option("X", x)->required();

    auto* table_cmd = app.add_subcommand("table", "exact vs estimated counts for consecutive N");
    table_cmd->add_option("--start", start)->required();
    table_cmd->add_option("--count", count)->required()->check(CLI::PositiveNumber);
    add_range(table_cmd);
    table_cmd->add_flag("--corrected", corrected);
    table_cmd->add_option("--format", format_name)->check(CLI::IsMember({"csv", "markdown"}));
    table_cmd->add_option("--out", out_path, "destination, - for stdout");

    auto* totals_cmd = app.add_subcommand("totals", "cumulative pair totals vs P^2/4 with unbalance powers");
    totals_cmd->add_option("N", values, "sum bounds")->required();
    totals_cmd->add_option("--format", format_name)->check(CLI::IsMember({"csv", "markdown"}));
    totals_cmd->add_option("--out", out_path, "destination, - for stdout");

    auto* cache_cmd = app.add_subcommand("pi-cache", "write a pi checkpoint cache for the given X values");
    cache_cmd->add_option("X", values)->required();
    cache_cmd->add_option("--out", out_path, "cache file to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    if (!pi_cache.empty()) {
        cfg.pi_cache_path = pi_cache;
    } else if (const char* env = std::getenv(kPiCacheEnv); env && *env) {
        cfg.pi_cache_path = env;
    }
    cfg.twin_constant_mode = twin_mode == "full" ? TwinConstantMode::FullPrecision : TwinConstantMode::Short;

    EstimateConfig est_cfg;
    if (cfg.twin_constant_mode == TwinConstantMode::FullPrecision) est_cfg.twin_constant = kTwinPrimeConstant;

    try {
        PiIndex index = cfg.pi_cache_path ? load_pi_cache(*cfg.pi_cache_path) : PiIndex{};
        const PrimeEngine engine({cfg.sieve_limit, cfg.segment_size, cfg.workers}, std::move(index));
        const RangeKind range = parse_range(range_name);

        auto reject_above_limit = [&](uint64_t v) {
            if (v > cfg.sieve_limit)
                throw ResourceError(std::to_string(v) + " exceeds sieve limit " + std::to_string(cfg.sieve_limit));
        };

        if (*count_cmd) {
            reject_above_limit(n);
            out << count_pairs(engine, n, range) << '\n';
        } else if (*estimate_cmd) {
            reject_above_limit(n);
            out << round_half_away(estimate(engine, n, range, corrected, est_cfg)) << '\n';
        } else if (*gtot_cmd) {
            reject_above_limit(m_limit);
            out << total_pairs(engine, m_limit) << '\n';
        } else if (*ndf_cmd) {
            reject_above_limit(n);
            out << format_fixed(ndf(n).value(), 4) << '\n';
        } else if (*avg_cmd) {
            reject_above_limit(start);
            out << format_fixed(ndf_average(start, count, cfg.workers), 6) << '\n';
        } else if (*unbalance_cmd) {
            reject_above_limit(n);
            const UnbalanceValue u = unbalance(engine, n, range, est_cfg);
            out << format_fixed(u.u, 4) << '\t' << format_fixed(u.correction, 4) << '\n';
        } else if (*pi_cmd) {
            out << engine.pi(x) << '\n';
        } else if (*table_cmd) {
            reject_above_limit(start);
            auto rows = build_table(engine, start, count, range, corrected, est_cfg);
            if (out_path == "-")
                emit_report(rows, parse_format(format_name), out);
            else
                emit_report(rows, parse_format(format_name), out_path);
        } else if (*totals_cmd) {
            for (uint64_t v : values) reject_above_limit(v);
            auto rows = build_totals(engine, values, cfg.extended);
            if (out_path == "-")
                emit_report(rows, parse_format(format_name), out);
            else
                emit_report(rows, parse_format(format_name), out_path);
        } else if (*cache_cmd) {
            save_pi_cache(engine.build_index(values), out_path);
        }
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kResource;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kResource;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kResource;
    }
    return kOk;
}

} // namespace goldbach::cli
