#include "t3des/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

namespace t3des::bench {

namespace {

using Clock = std::chrono::steady_clock;

const TripleKey kBenchKey =
    parse_hex_key("133457799BBCDFF10E329232EA6D0D737CA110454A1A6E57");

void apply_variable(DispatchConfig& cfg, SweepVariable var,
                    std::size_t value) {
    switch (var) {
        case SweepVariable::WorkGroup:
            cfg.work_group = value;
            break;
        case SweepVariable::ChunkBlocks:
            cfg.chunk_blocks = value;
            break;
        case SweepVariable::Workers:
            cfg.workers = static_cast<unsigned>(value);
            break;
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::uint8_t> make_payload(std::uint64_t bytes,
                                       std::uint64_t seed) {
    std::vector<std::uint8_t> payload(bytes);
    std::mt19937_64 rng(seed);
    std::uint64_t word = 0;
    for (std::uint64_t i = 0; i < bytes; ++i) {
        if (i % 8 == 0) word = rng();
        payload[i] = static_cast<std::uint8_t>(word >> (8 * (i % 8)));
    }
    return payload;
}

std::vector<BenchRecord> run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    if (!std::is_sorted(spec.values.begin(), spec.values.end()) ||
        std::adjacent_find(spec.values.begin(), spec.values.end()) !=
            spec.values.end()) {
        throw ConfigError("sweep values must be strictly increasing");
    }
    if (spec.repetitions < 1) {
        throw ConfigError("repetitions must be >= 1");
    }
    if (spec.payload_bytes % 8 != 0) {
        throw ConfigError("payload size must be a multiple of 8 bytes");
    }

    const auto payload = make_payload(spec.payload_bytes, spec.seed);
    const TripleSchedule ts = triple_schedule(kBenchKey);

    // Scalar-reference oracle on a sampled prefix; every timed run must
    // match it before its record is reported.
    const std::size_t prefix_bytes =
        std::min<std::size_t>(payload.size(), 4096 * 8);
    std::vector<std::uint8_t> oracle(prefix_bytes);
    {
        DispatchConfig scalar;
        scalar.backend = Backend::ScalarReference;
        encrypt_batch(std::span(payload).first(prefix_bytes), oracle, ts,
                      scalar);
    }

    std::vector<BenchRecord> records;
    std::vector<std::uint8_t> out(payload.size());
    for (std::size_t value : spec.values) {
        DispatchConfig cfg = spec.fixed;
        apply_variable(cfg, spec.variable, value);

        BenchRecord rec;
        rec.backend = cfg.backend;
        rec.workers = resolve_workers(cfg);
        rec.chunk_blocks = cfg.chunk_blocks;
        rec.work_group = cfg.work_group;
        rec.payload_bytes = spec.payload_bytes;
        try {
            double best = 0.0;
            // Repetition 0 is the untimed warm-up.
            for (unsigned rep = 0; rep <= spec.repetitions; ++rep) {
                const auto t0 = Clock::now();
                encrypt_batch(payload, out, ts, cfg);
                const double elapsed =
                    std::chrono::duration<double>(Clock::now() - t0).count();
                if (!std::equal(oracle.begin(), oracle.end(), out.begin())) {
                    throw std::runtime_error(
                        "output mismatch vs scalar reference");
                }
                if (rep > 0 && (rep == 1 || elapsed < best)) best = elapsed;
            }
            rec.compute_seconds = best;
            rec.throughput_mb_s = static_cast<double>(spec.payload_bytes) /
                                  best / (1 << 20);
        } catch (const std::exception&) {
            rec.ok = false;
        }
        records.push_back(rec);
    }

    if (!records.empty() && records.front().ok) {
        const double base = records.front().compute_seconds;
        for (BenchRecord& rec : records) {
            if (rec.ok) rec.speedup_vs_baseline = base / rec.compute_seconds;
        }
    }
    return records;
}

std::string speedup_table(const std::vector<BenchRecord>& records,
                          std::size_t baseline_index) {
    if (baseline_index >= records.size() || !records[baseline_index].ok) {
        throw ConfigError("baseline record missing or failed");
    }
    const double base = records[baseline_index].compute_seconds;
    std::ostringstream os;
    os << "| backend | workers | chunk | work group | time (s) | speedup "
          "|\n";
    os << "|---|---|---|---|---|---|\n";
    char buf[64];
    for (const BenchRecord& r : records) {
        os << "| " << backend_name(r.backend) << " | " << r.workers << " | "
           << r.chunk_blocks << " | " << r.work_group << " | ";
        if (r.ok) {
            std::snprintf(buf, sizeof buf, "%.3f | %.2f |",
                          r.compute_seconds, base / r.compute_seconds);
            os << buf << '\n';
        } else {
            os << "failed | - |\n";
        }
    }
    return os.str();
}

static const char* kCsvHeader =
    "backend,workers,chunk_blocks,work_group,payload_bytes,"
    "compute_seconds,io_seconds,throughput_mb_s,speedup_vs_baseline,ok";

std::string emit_report(const std::vector<BenchRecord>& records,
                        ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        os << kCsvHeader << '\n';
        for (const BenchRecord& r : records) {
            os << backend_name(r.backend) << ',' << r.workers << ','
               << r.chunk_blocks << ',' << r.work_group << ','
               << r.payload_bytes << ',' << format_double(r.compute_seconds)
               << ',' << format_double(r.io_seconds) << ','
               << format_double(r.throughput_mb_s) << ','
               << format_double(r.speedup_vs_baseline) << ','
               << (r.ok ? "ok" : "failed") << '\n';
        }
        return os.str();
    }
    if (format != ReportFormat::Markdown) {
        throw ConfigError("unknown report format");
    }
    os << "| backend | workers | chunk | work group | payload (B) | "
          "compute (s) | io (s) | MB/s | speedup |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    char buf[128];
    for (const BenchRecord& r : records) {
        if (!r.ok) {
            os << "| " << backend_name(r.backend) << " | " << r.workers
               << " | " << r.chunk_blocks << " | " << r.work_group
               << " | failed | - | - | - | - |\n";
            continue;
        }
        std::snprintf(buf, sizeof buf,
                      "| %s | %u | %zu | %zu | %llu | %.4f | %.4f | %.2f | "
                      "%.2f |",
                      backend_name(r.backend).c_str(), r.workers,
                      r.chunk_blocks, r.work_group,
                      (unsigned long long)r.payload_bytes, r.compute_seconds,
                      r.io_seconds, r.throughput_mb_s,
                      r.speedup_vs_baseline);
        os << buf << '\n';
    }
    return os.str();
}

std::vector<BenchRecord> parse_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw ConfigError("unrecognized CSV header");
    }
    std::vector<BenchRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        auto next = [&]() {
            if (!std::getline(ls, field, ',')) {
                throw ConfigError("short CSV row: " + line);
            }
            return field;
        };
        BenchRecord r;
        r.backend = backend_from_name(next());
        r.workers = static_cast<unsigned>(std::stoul(next()));
        r.chunk_blocks = std::stoull(next());
        r.work_group = std::stoull(next());
        r.payload_bytes = std::stoull(next());
        r.compute_seconds = std::stod(next());
        r.io_seconds = std::stod(next());
        r.throughput_mb_s = std::stod(next());
        r.speedup_vs_baseline = std::stod(next());
        r.ok = next() == "ok";
        records.push_back(r);
    }
    return records;
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::ScalarReference:
            return "scalar";
        case Backend::Threaded:
            return "threaded";
        case Backend::NoOpCopy:
            return "noop";
    }
    return "unknown";
}

Backend backend_from_name(const std::string& name) {
    if (name == "scalar") return Backend::ScalarReference;
    if (name == "threaded") return Backend::Threaded;
    if (name == "noop") return Backend::NoOpCopy;
    throw ConfigError("unknown backend name: " + name);
}

}  // namespace t3des::bench
