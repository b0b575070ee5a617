#include "goldbach/harness.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace goldbach;

namespace {

const PrimeEngine& engine()
{
    static const PrimeEngine e;
    return e;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct PublishedRow {
    uint64_t n;
    double ndf;
    uint64_t exact;
    int64_t estimate;
    double ratio;
};

// Full-range block at N = 5e6.
const std::vector<PublishedRow> kFullBlock{
    {5000000, 1.3333, 38807, 36317, 0.9358}, {5000001, 2.0444, 59624, 55686, 0.9339},
    {5000002, 1.2706, 36850, 34608, 0.9392}, {5000003, 1.0238, 29835, 27886, 0.9347},
    {5000004, 2.0000, 58229, 54475, 0.9355}, {5000005, 1.3468, 39045, 36684, 0.9395},
    {5000006, 1.2318, 35731, 33550, 0.9390}, {5000007, 2.0113, 58445, 54783, 0.9373},
    {5000008, 1.1024, 31905, 30026, 0.9411}, {5000009, 1.2193, 35420, 33210, 0.9376},
    {5000010, 2.6667, 77536, 72634, 0.9368}, {5000011, 1.0000, 29033, 27238, 0.9382},
};

const std::vector<PublishedRow> kReducedBlock{
    {5000000, 1.3333, 15378, 15043, 0.9782}, {5000001, 2.0444, 23696, 23066, 0.9734},
    {5000002, 1.2706, 14601, 14335, 0.9818}, {5000003, 1.0238, 11881, 11551, 0.9722},
    {5000004, 2.0000, 23203, 22564, 0.9725}, {5000005, 1.3468, 15542, 15195, 0.9777},
    {5000006, 1.2318, 14176, 13897, 0.9803}, {5000007, 2.0113, 23220, 22692, 0.9773},
    {5000008, 1.1024, 12597, 12437, 0.9873}, {5000009, 1.2193, 14145, 13756, 0.9725},
    {5000010, 2.6667, 30848, 30086, 0.9753}, {5000011, 1.0000, 11521, 11282, 0.9793},
};

void expect_block(const std::vector<EstimateRow>& rows, const std::vector<PublishedRow>& published)
{
    ASSERT_EQ(rows.size(), published.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].n, published[i].n);
        EXPECT_NEAR(rows[i].ndf, published[i].ndf, 1e-9) << rows[i].n;
        EXPECT_EQ(rows[i].exact, published[i].exact) << rows[i].n;
        EXPECT_LE(std::abs(rows[i].estimate - published[i].estimate), 1) << rows[i].n;
        EXPECT_NEAR(rows[i].ratio, published[i].ratio, 2e-4 + 1e-9) << rows[i].n;
    }
}

} // namespace

TEST(Format, FixedFourDecimals)
{
    EXPECT_EQ(format_fixed(1.0), "1.0000");
    EXPECT_EQ(format_fixed(4.0 / 3.0), "1.3333");
    EXPECT_EQ(format_fixed(2.0 / 3.0), "0.6667");
    EXPECT_EQ(format_fixed(0.03125), "0.0313");  // half away from zero
    EXPECT_EQ(format_fixed(-0.03125), "-0.0313");
    EXPECT_EQ(format_fixed(-0.00001), "0.0000");
    EXPECT_EQ(format_fixed(1.51477, 6), "1.514770");
    EXPECT_EQ(round_half_away(2.5), 3);
    EXPECT_EQ(round_half_away(-2.5), -3);
}

TEST(BuildTable, FullBlockMatchesPublished)
{
    expect_block(build_table(engine(), 5000000, 12, RangeKind::Full, false), kFullBlock);
}

TEST(BuildTable, ReducedBlockMatchesPublished)
{
    expect_block(build_table(engine(), 5000000, 12, RangeKind::Reduced, false), kReducedBlock);
}

TEST(BuildTable, RowsAreInternallyConsistent)
{
    auto rows = build_table(engine(), 5000000, 6, RangeKind::Full, true);
    for (const auto& r : rows) {
        EXPECT_EQ(r.ratio, round_to(static_cast<double>(r.estimate) / static_cast<double>(r.exact), 4));
        EXPECT_EQ(*r.corrected_ratio,
                  round_to(static_cast<double>(r.estimate) * *r.correction / static_cast<double>(r.exact), 4));
        EXPECT_DOUBLE_EQ(*r.correction, std::pow(*r.u, 1.5));
    }
}

TEST(BuildTable, CorrectedFirstRow)
{
    auto rows = build_table(engine(), 5000000, 1, RangeKind::Full, true);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(*rows[0].corrected_ratio, 1.0052, 1e-9);
    EXPECT_NEAR(*rows[0].u, 1.0488, 5e-5);
}

TEST(BuildTable, ErrorsNameTheRow)
{
    try {
        build_table(engine(), 177990, 10, RangeKind::Full, false);
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("n=177990"), std::string::npos) << e.what();
    }
    EXPECT_THROW(build_table(engine(), 5000000, 0, RangeKind::Full, false), DomainError);
    PrimeEngine small({.sieve_limit = 1'000'000});
    EXPECT_THROW(build_table(small, 500'001, 2, RangeKind::Full, false), ResourceError);
}

TEST(BuildTable, RatioEnvelope)
{
    auto full = build_table(engine(), 5000000, 12, RangeKind::Full, true);
    auto reduced = build_table(engine(), 5000000, 12, RangeKind::Reduced, true);
    for (std::size_t i = 0; i < full.size(); ++i) {
        EXPECT_LT(full[i].ratio, 1.0);
        EXPECT_LT(reduced[i].ratio, 1.0);
        EXPECT_GT(reduced[i].ratio, full[i].ratio);
        EXPECT_GE(*full[i].corrected_ratio, 0.985);
        EXPECT_LE(*full[i].corrected_ratio, 1.015);
        EXPECT_GE(*reduced[i].corrected_ratio, 0.985);
        EXPECT_LE(*reduced[i].corrected_ratio, 1.015);
    }
}

TEST(BuildTotals, OneMillionRow)
{
    auto rows = build_totals(engine(), {1'000'000});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].total, 1671879782u);
    EXPECT_EQ(rows[0].approx, 1540484001u);
    EXPECT_NEAR(rows[0].ratio, 1.0853, 5e-5);
    EXPECT_NEAR(rows[0].u, 1.0583, 5e-5);
    EXPECT_NEAR(rows[0].u_sq, 1.1200, 5e-5);
    EXPECT_NEAR(rows[0].u_32, 1.0887, 5e-5);
    EXPECT_DOUBLE_EQ(rows[0].u_32, std::pow(rows[0].u, 1.5));
}

TEST(BuildTotals, Gating)
{
    EXPECT_THROW(build_totals(engine(), {1'000'000'000}), ResourceError);
    EXPECT_THROW(build_totals(engine(), {1'000'001}), DomainError);
    EXPECT_THROW(build_totals(engine(), {}), DomainError);
}

TEST(EmitReport, CsvSingleRow)
{
    auto rows = build_table(engine(), 5000000, 1, RangeKind::Full, false);
    std::ostringstream out;
    emit_report(rows, ReportFormat::Csv, out);
    EXPECT_EQ(out.str(), "n,ndf,exact,estimate,ratio,u,correction,corrected_ratio\n"
                         "5000000,1.3333,38807,36317,0.9358,,,\n");
}

TEST(EmitReport, EmptyRowsRejected)
{
    std::ostringstream out;
    EXPECT_THROW(emit_report(std::vector<EstimateRow>{}, ReportFormat::Csv, out), DomainError);
    EXPECT_THROW(emit_report(std::vector<TotalsRow>{}, ReportFormat::Markdown, out), DomainError);
}

TEST(EmitReport, MarkdownBlock)
{
    auto rows = build_table(engine(), 5000000, 12, RangeKind::Full, false);
    std::ostringstream out;
    emit_report(rows, ReportFormat::Markdown, out);
    std::istringstream lines(out.str());
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    ASSERT_EQ(all.size(), 14u);
    EXPECT_EQ(all[0], "| N | NDF | exact count | estimate | estimate/exact |");
    EXPECT_EQ(all[2], "| 5000000 | 1.3333 | 38807 | 36317 | 0.9358 |");
    EXPECT_EQ(all[13], "| 5000011 | 1.0000 | 29033 | 27238 | 0.9382 |");
}

TEST(EmitReport, UnwritableDestination)
{
    auto rows = build_table(engine(), 5000000, 1, RangeKind::Full, false);
    EXPECT_THROW(emit_report(rows, ReportFormat::Csv, std::string("/nonexistent-dir/out.csv")), IoError);
}

// Golden files: frozen output of the two 5e6 blocks, checked against the
// published columns by the tests above.
TEST(Golden, FullAndReducedBlocksAreByteIdentical)
{
    for (auto [range, file] : {std::pair{RangeKind::Full, "table_5000000_full.csv"},
                               std::pair{RangeKind::Reduced, "table_5000000_reduced_corrected.csv"}}) {
        const bool corrected = range == RangeKind::Reduced;
        std::ostringstream first, second;
        emit_report(build_table(engine(), 5000000, 12, range, corrected), ReportFormat::Csv, first);
        emit_report(build_table(engine(), 5000000, 12, range, corrected), ReportFormat::Csv, second);
        EXPECT_EQ(first.str(), second.str());
        EXPECT_EQ(first.str(), slurp(std::string(GOLDBACH_GOLDEN_DIR) + "/" + file)) << file;
    }
}

TEST(Golden, TotalsMarkdown)
{
    std::ostringstream out;
    emit_report(build_totals(engine(), {1'000'000, 10'000'000}), ReportFormat::Markdown, out);
    EXPECT_EQ(out.str(), slurp(std::string(GOLDBACH_GOLDEN_DIR) + "/totals.md"));
}
