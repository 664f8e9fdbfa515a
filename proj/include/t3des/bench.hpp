#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "t3des/dispatch.hpp"

// Benchmark harness: work-group sweeps, chunk-size sweeps and worker
// scaling, with compute time kept separate from I/O and every timed run
// spot-checked against the scalar reference first.
namespace t3des::bench {

struct BenchRecord {
    Backend backend = Backend::Threaded;
    unsigned workers = 1;
    std::size_t chunk_blocks = 0;
    std::size_t work_group = 0;
    std::uint64_t payload_bytes = 0;
    double compute_seconds = 0.0;
    double io_seconds = 0.0;
    double throughput_mb_s = 0.0;  // payload / compute time / 2^20
    double speedup_vs_baseline = 0.0;
    bool ok = true;

    bool operator==(const BenchRecord&) const = default;
};

enum class SweepVariable { WorkGroup, ChunkBlocks, Workers };

struct SweepSpec {
    SweepVariable variable = SweepVariable::Workers;
    std::vector<std::size_t> values;  // non-empty, strictly increasing
    DispatchConfig fixed;
    std::uint64_t payload_bytes = 64ull << 20;
    unsigned repetitions = 3;  // headline time is the minimum over these
    std::uint64_t seed = 0x3DE5C0DE;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Deterministic pseudo-random payload for reproducible runs.
std::vector<std::uint8_t> make_payload(std::uint64_t bytes,
                                       std::uint64_t seed);

// One record per sweep value; each run is verified against the scalar
// reference on a sampled prefix before its timing is reported. The first
// record is the speedup baseline. One warm-up run precedes timing.
std::vector<BenchRecord> run_sweep(const SweepSpec& spec);

// Table IV style layout: every row shows its time and the speedup vs the
// selected baseline row. Throws ConfigError if the baseline is missing.
std::string speedup_table(const std::vector<BenchRecord>& records,
                          std::size_t baseline_index);

enum class ReportFormat { Csv, Markdown };

std::string emit_report(const std::vector<BenchRecord>& records,
                        ReportFormat format);

// Inverse of emit_report(..., Csv): exact field round trip.
std::vector<BenchRecord> parse_csv(const std::string& csv);

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

}  // namespace t3des::bench
