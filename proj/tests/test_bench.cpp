#include <doctest.h>

#include <fstream>
#include <sstream>

#include "t3des/bench.hpp"

using namespace t3des;
using namespace t3des::bench;

namespace {

BenchRecord sample_record() {
    BenchRecord r;
    r.backend = Backend::Threaded;
    r.workers = 4;
    r.chunk_blocks = 131072;
    r.work_group = 256;
    r.payload_bytes = 64ull << 20;
    r.compute_seconds = 1.2345678901234567;
    r.io_seconds = 0.5;
    r.throughput_mb_s = 51.84;
    r.speedup_vs_baseline = 3.97;
    return r;
}

}  // namespace

TEST_CASE("speedup table from fixed times") {
    std::vector<BenchRecord> rows(3);
    rows[0].compute_seconds = 2177.23;
    rows[0].workers = 1;
    rows[1].compute_seconds = 1093.86;
    rows[1].workers = 2;
    rows[2].compute_seconds = 544.43;
    rows[2].workers = 4;

    const std::string table = speedup_table(rows, 0);
    CHECK(table.find("| 1.00 |") != std::string::npos);
    CHECK(table.find("| 1.99 |") != std::string::npos);
    CHECK(table.find("| 4.00 |") != std::string::npos);

    // Ratio arithmetic on a two-row set.
    std::vector<BenchRecord> two(2);
    two[0].compute_seconds = 100.0;
    two[1].compute_seconds = 50.0;
    const std::string t2 = speedup_table(two, 0);
    CHECK(t2.find("| 1.00 |") != std::string::npos);
    CHECK(t2.find("| 2.00 |") != std::string::npos);

    // Single row is its own baseline.
    std::vector<BenchRecord> one(1);
    one[0].compute_seconds = 10.0;
    CHECK(speedup_table(one, 0).find("| 1.00 |") != std::string::npos);
}

TEST_CASE("speedup table requires a baseline") {
    std::vector<BenchRecord> rows(1);
    CHECK_THROWS_AS(speedup_table(rows, 5), ConfigError);
    rows[0].ok = false;
    CHECK_THROWS_AS(speedup_table(rows, 0), ConfigError);
}

TEST_CASE("empty record list emits a header-only CSV") {
    const std::string csv = emit_report({}, ReportFormat::Csv);
    CHECK(csv.find('\n') == csv.size() - 1);
    CHECK(parse_csv(csv).empty());
}

TEST_CASE("CSV round trip is exact") {
    std::vector<BenchRecord> records{sample_record()};
    records.push_back(sample_record());
    records[1].backend = Backend::ScalarReference;
    records[1].workers = 1;
    records[1].compute_seconds = 0.000123456789012345;
    records[1].ok = false;

    const std::string csv = emit_report(records, ReportFormat::Csv);
    CHECK(parse_csv(csv) == records);
    // Two records -> header + two lines.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("CSV parser rejects foreign input") {
    CHECK_THROWS_AS(parse_csv("nope\n1,2,3\n"), ConfigError);
}

TEST_CASE("markdown report renders one row per record") {
    const std::string md =
        emit_report({sample_record()}, ReportFormat::Markdown);
    CHECK(md.find("| threaded | 4 | 131072 | 256 |") != std::string::npos);
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.values = {};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    spec.values = {4, 2};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    spec.values = {2, 2};
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
    spec.values = {2};
    spec.repetitions = 0;
    CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("single-value sweep is its own baseline") {
    SweepSpec spec;
    spec.variable = SweepVariable::Workers;
    spec.values = {1};
    spec.payload_bytes = 1 << 20;
    spec.repetitions = 1;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 1);
    CHECK(records[0].ok);
    CHECK(records[0].speedup_vs_baseline == doctest::Approx(1.0));
    CHECK(records[0].workers == 1);
    CHECK(records[0].throughput_mb_s > 0.0);
}

TEST_CASE("sweep records carry the swept value") {
    SweepSpec spec;
    spec.variable = SweepVariable::ChunkBlocks;
    spec.values = {64, 4096};
    spec.payload_bytes = 1 << 20;
    spec.repetitions = 1;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 2);
    CHECK(records[0].chunk_blocks == 64);
    CHECK(records[1].chunk_blocks == 4096);
    for (const auto& r : records) CHECK(r.ok);
}

TEST_CASE("a failing backend is marked failed, sweep continues") {
    // The no-op backend copies plaintext through, so it can never match the
    // scalar oracle: its record must be marked failed rather than timed.
    SweepSpec spec;
    spec.variable = SweepVariable::Workers;
    spec.values = {1, 2};
    spec.payload_bytes = 1 << 16;
    spec.repetitions = 1;
    spec.fixed.backend = Backend::NoOpCopy;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 2);
    CHECK_FALSE(records[0].ok);
    CHECK_FALSE(records[1].ok);
    CHECK(records[0].compute_seconds == 0.0);
}

TEST_CASE("payload generation is deterministic in the seed") {
    const auto a = make_payload(4096, 99);
    const auto b = make_payload(4096, 99);
    const auto c = make_payload(4096, 100);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("throughput uses compute time only") {
    const BenchRecord r = sample_record();
    CHECK(r.throughput_mb_s ==
          doctest::Approx(double(r.payload_bytes) / r.compute_seconds /
                          (1 << 20)).epsilon(0.2));
}
