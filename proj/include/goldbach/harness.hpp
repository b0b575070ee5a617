// harness.hpp
// Comparison tables: exact pair counts next to the analytic estimates, and the
// cumulative totals table with the unbalance powers. Reports are written as
// CSV or markdown with 4-decimal, half-away-from-zero formatting.

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/estimator.hpp"
#include "goldbach/pair_counter.hpp"
#include "goldbach/prime_engine.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace goldbach {

// -------------------------------------------------------
// Rounding / formatting
// -------------------------------------------------------
inline int64_t round_half_away(double x) { return std::llround(x); }

inline double round_to(double x, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    return static_cast<double>(std::llround(x * scale)) / scale;
}

// Fixed-point rendering that does not depend on printf rounding mode.
inline std::string format_fixed(double x, int decimals = 4)
{
    int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const int64_t k = std::llround(x * static_cast<double>(scale));
    const bool negative = k < 0;
    const uint64_t mag = negative ? static_cast<uint64_t>(-k) : static_cast<uint64_t>(k);
    std::string frac = std::to_string(mag % static_cast<uint64_t>(scale));
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    std::string out = (negative ? "-" : "") + std::to_string(mag / static_cast<uint64_t>(scale));
    if (decimals > 0) out += "." + frac;
    return out;
}

// -------------------------------------------------------
// Estimate table
// -------------------------------------------------------
struct EstimateRow {
    uint64_t n = 0;
    double ndf = 0.0;  // 4 decimals
    uint64_t exact = 0;
    int64_t estimate = 0;
    double ratio = 0.0;  // estimate / exact, 4 decimals
    std::optional<double> u;
    std::optional<double> correction;
    std::optional<double> corrected_ratio;  // estimate * correction / exact, 4 decimals
};

namespace detail {

template <class Fn>
auto with_row_context(uint64_t n, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const DomainError& e) {
        throw DomainError("n=" + std::to_string(n) + ": " + e.what());
    } catch (const ResourceError& e) {
        throw ResourceError("n=" + std::to_string(n) + ": " + e.what());
    }
}

} // namespace detail

inline EstimateRow build_row(const PrimeEngine& engine, uint64_t n, RangeKind range, bool corrected,
                             const EstimateConfig& cfg = {})
{
    return detail::with_row_context(n, [&] {
        const Estimate est = estimate_detail(engine, n, range, corrected, cfg);
        EstimateRow row;
        row.n = n;
        row.ndf = round_to(est.ndf.value(), 4);
        row.exact = count_pairs(engine, n, range);
        if (row.exact == 0) throw DomainError("no pairs for n, ratio undefined");
        row.estimate = round_half_away(est.raw);
        const double exact = static_cast<double>(row.exact);
        row.ratio = round_to(static_cast<double>(row.estimate) / exact, 4);
        if (corrected) {
            row.u = est.unbalance->u;
            row.correction = est.correction;
            row.corrected_ratio = round_to(static_cast<double>(row.estimate) * est.correction / exact, 4);
        }
        return row;
    });
}

// Rows for n = start .. start+count-1, ascending. Any failing row aborts the table.
inline std::vector<EstimateRow> build_table(const PrimeEngine& engine, uint64_t start, uint64_t count,
                                            RangeKind range, bool corrected, const EstimateConfig& cfg = {})
{
    if (count == 0) throw DomainError("table needs at least one row");
    std::vector<EstimateRow> rows;
    rows.reserve(count);
    for (uint64_t i = 0; i < count; ++i) rows.push_back(build_row(engine, start + i, range, corrected, cfg));
    return rows;
}

// -------------------------------------------------------
// Totals table
// -------------------------------------------------------
// Row label n is the bound on the pair sum: total = G_tot(n), approx is
// P^2/4 with P = pi(n), and the unbalance is taken at n/2.
struct TotalsRow {
    uint64_t n = 0;
    uint64_t total = 0;
    uint64_t approx = 0;
    double ratio = 0.0;  // total / approx
    double u = 0.0;
    double u_sq = 0.0;
    double u_32 = 0.0;
};

inline constexpr uint64_t kTotalsExtendedThreshold = 100'000'000;

inline TotalsRow build_totals_row(const PrimeEngine& engine, uint64_t n, bool extended = false)
{
    return detail::with_row_context(n, [&] {
        if (n < 10 || n % 2 != 0) throw DomainError("totals rows need an even sum bound >= 10");
        if (n > kTotalsExtendedThreshold && !extended)
            throw ResourceError("totals above " + std::to_string(kTotalsExtendedThreshold) +
                                " take minutes and GBs of sieving; rerun with --extended or supply --pi-cache");
        TotalsRow row;
        row.n = n;
        row.total = total_pairs(engine, n);
        const auto p = static_cast<unsigned __int128>(engine.pi(n));
        row.approx = static_cast<uint64_t>((p * p + 2) / 4);
        row.ratio = static_cast<double>(row.total) / static_cast<double>(row.approx);
        row.u = unbalance(engine, n / 2).u;
        row.u_sq = row.u * row.u;
        row.u_32 = std::pow(row.u, 1.5);
        return row;
    });
}

inline std::vector<TotalsRow> build_totals(const PrimeEngine& engine, const std::vector<uint64_t>& n_values,
                                           bool extended = false)
{
    if (n_values.empty()) throw DomainError("totals needs at least one n");
    std::vector<TotalsRow> rows;
    rows.reserve(n_values.size());
    for (uint64_t n : n_values) rows.push_back(build_totals_row(engine, n, extended));
    return rows;
}

// -------------------------------------------------------
// Reports
// -------------------------------------------------------
enum class ReportFormat { Csv, Markdown };

inline ReportFormat parse_format(std::string_view s)
{
    if (s == "csv") return ReportFormat::Csv;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    throw DomainError("unknown format '" + std::string(s) + "' (expected csv|markdown)");
}

inline std::string optional_fixed(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string{}; }

inline void emit_report(const std::vector<EstimateRow>& rows, ReportFormat format, std::ostream& out)
{
    if (rows.empty()) throw DomainError("report needs at least one row");
    if (format == ReportFormat::Csv) {
        out << "n,ndf,exact,estimate,ratio,u,correction,corrected_ratio\n";
        for (const auto& r : rows)
            out << r.n << ',' << format_fixed(r.ndf) << ',' << r.exact << ',' << r.estimate << ','
                << format_fixed(r.ratio) << ',' << optional_fixed(r.u) << ',' << optional_fixed(r.correction) << ','
                << optional_fixed(r.corrected_ratio) << '\n';
        return;
    }
    const bool corrected = rows.front().correction.has_value();
    if (!corrected) {
        out << "| N | NDF | exact count | estimate | estimate/exact |\n";
        out << "|---|---|---|---|---|\n";
        for (const auto& r : rows)
            out << "| " << r.n << " | " << format_fixed(r.ndf) << " | " << r.exact << " | " << r.estimate << " | "
                << format_fixed(r.ratio) << " |\n";
    } else {
        out << "| N | exact count | estimate | estimate/exact | U(N) | U(N)^3/2 (correction) | corr. estimate/exact |\n";
        out << "|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows)
            out << "| " << r.n << " | " << r.exact << " | " << r.estimate << " | " << format_fixed(r.ratio) << " | "
                << optional_fixed(r.u) << " | " << optional_fixed(r.correction) << " | "
                << optional_fixed(r.corrected_ratio) << " |\n";
    }
}

inline void emit_report(const std::vector<TotalsRow>& rows, ReportFormat format, std::ostream& out)
{
    if (rows.empty()) throw DomainError("report needs at least one row");
    if (format == ReportFormat::Csv) {
        out << "n,total,approx,ratio,u,u_sq,u_32\n";
        for (const auto& r : rows)
            out << r.n << ',' << r.total << ',' << r.approx << ',' << format_fixed(r.ratio) << ','
                << format_fixed(r.u) << ',' << format_fixed(r.u_sq) << ',' << format_fixed(r.u_32) << '\n';
        return;
    }
    out << "| N | prime pairs total | estimate | total/estimate | U(N) | U(N)^2 | U(N)^3/2 |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows)
        out << "| " << r.n << " | " << r.total << " | " << r.approx << " | " << format_fixed(r.ratio) << " | "
            << format_fixed(r.u) << " | " << format_fixed(r.u_sq) << " | " << format_fixed(r.u_32) << " |\n";
}

// destination "-" means standard output.
template <class Row>
void emit_report(const std::vector<Row>& rows, ReportFormat format, const std::string& destination)
{
    if (rows.empty()) throw DomainError("report needs at least one row");
    if (destination == "-") {
        emit_report(rows, format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + destination + "' for writing");
    emit_report(rows, format, out);
    if (!out) throw IoError("failed writing '" + destination + "'");
}

} // namespace goldbach
