// Command-line front end: encrypt/decrypt files through the ECB batch
// engine, run the embedded verification suite, or run benchmark sweeps.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 key format,
// 4 input length, 5 bad padding, 6 parity check failure, 7 verification
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "t3des/bench.hpp"
#include "t3des/dispatch.hpp"
#include "t3des/verify.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitKeyFormat = 3;
constexpr int kExitInputLength = 4;
constexpr int kExitPadding = 5;
constexpr int kExitParity = 6;
constexpr int kExitVerifyFailed = 7;

struct CommonOpts {
    std::string key_hex;
    std::string key_file;
    std::string input = "-";
    std::string output = "-";
    bool pkcs7 = false;
    bool check_parity = false;
    bool strict_keys = false;
    std::size_t chunk_blocks = 131072;
    std::size_t work_group = 256;
    unsigned workers = 0;
    std::string backend = "threaded";
};

std::string read_key_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw t3des::IoError("cannot open key file: " + path, 0);
    }
    std::string hex;
    std::getline(in, hex);
    while (!hex.empty() && (hex.back() == '\r' || hex.back() == ' ')) {
        hex.pop_back();
    }
    return hex;
}

t3des::TripleKey load_key(const CommonOpts& o) {
    std::string hex = o.key_hex;
    if (hex.empty() && !o.key_file.empty()) hex = read_key_file(o.key_file);
    if (hex.empty()) {
        throw t3des::KeyFormatError("a key is required (--key or --key-file)");
    }
    t3des::TripleKey key = t3des::parse_hex_key(hex);

    const t3des::DesKey parts[3] = {key.k1, key.k2, key.k3};
    for (const t3des::DesKey& k : parts) {
        if (o.check_parity && !t3des::has_odd_parity(k)) {
            throw t3des::ParityError(
                "key byte fails odd-parity check (--check-parity)");
        }
        if (t3des::is_weak_key(k) || t3des::is_semiweak_key(k)) {
            if (o.strict_keys) {
                throw t3des::KeyFormatError(
                    "weak or semi-weak DES key rejected (--strict-keys)");
            }
            std::cerr << "warning: key component is a weak or semi-weak DES "
                         "key\n";
        }
    }
    return key;
}

t3des::DispatchConfig make_config(const CommonOpts& o) {
    t3des::DispatchConfig cfg;
    cfg.chunk_blocks = o.chunk_blocks;
    cfg.work_group = o.work_group;
    cfg.workers = o.workers;
    if (cfg.workers == 0) {
        if (const char* env = std::getenv("T3DES_WORKERS")) {
            cfg.workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        }
    }
    cfg.backend = t3des::bench::backend_from_name(o.backend);
    return cfg;
}

int run_crypt(const CommonOpts& o, bool encrypt) {
    const t3des::TripleKey key = load_key(o);
    const t3des::TripleSchedule ts = t3des::triple_schedule(key);
    const t3des::DispatchConfig cfg = make_config(o);
    const t3des::PaddingMode pad =
        o.pkcs7 ? t3des::PaddingMode::Pkcs7 : t3des::PaddingMode::None;

    std::ifstream fin;
    std::ofstream fout;
    std::istream* in = &std::cin;
    std::ostream* out = &std::cout;
    if (o.input != "-") {
        fin.open(o.input, std::ios::binary);
        if (!fin) {
            std::cerr << "error: cannot open input file: " << o.input << '\n';
            return kExitIo;
        }
        in = &fin;
    }
    if (o.output != "-") {
        fout.open(o.output, std::ios::binary);
        if (!fout) {
            std::cerr << "error: cannot open output file: " << o.output
                      << '\n';
            return kExitIo;
        }
        out = &fout;
    }

    const t3des::StreamReport report =
        encrypt ? t3des::encrypt_stream(*in, *out, ts, cfg, pad)
                : t3des::decrypt_stream(*in, *out, ts, cfg, pad);
    std::cerr << (encrypt ? "encrypted " : "decrypted ") << report.bytes_in
              << " -> " << report.bytes_out << " bytes, " << report.chunks
              << " chunks, compute " << report.compute_seconds
              << " s, io " << report.io_seconds << " s\n";
    return 0;
}

int run_bench(const t3des::bench::SweepSpec& spec, const std::string& format,
              const std::string& out_path) {
    using namespace t3des::bench;
    const std::vector<BenchRecord> records = run_sweep(spec);
    const ReportFormat fmt =
        format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
    const std::string report = emit_report(records, fmt);
    if (out_path.empty() || out_path == "-") {
        std::cout << report;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open report file: " << out_path
                      << '\n';
            return kExitIo;
        }
        out << report;
    }
    if (records.size() > 1) {
        std::cerr << '\n' << speedup_table(records, 0);
    }
    for (const BenchRecord& r : records) {
        if (!r.ok) return kExitVerifyFailed;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3DES-ECB batch encryption engine and benchmark harness"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd, bool needs_key) {
        if (needs_key) {
            cmd->add_option("--key", opts.key_hex,
                            "key as 16/32/48 hex chars");
            cmd->add_option("--key-file", opts.key_file,
                            "file containing the hex key");
            cmd->add_option("input", opts.input, "input file or '-'");
            cmd->add_option("output", opts.output, "output file or '-'");
            cmd->add_flag("--pkcs7", opts.pkcs7, "PKCS#7 padding");
            cmd->add_flag("--check-parity", opts.check_parity,
                          "reject keys with bad odd parity");
            cmd->add_flag("--strict-keys", opts.strict_keys,
                          "reject weak/semi-weak DES keys");
        }
        cmd->add_option("--chunk-blocks", opts.chunk_blocks,
                        "blocks per dispatch");
        cmd->add_option("--work-group", opts.work_group,
                        "blocks per worker task");
        cmd->add_option("--workers", opts.workers,
                        "worker count (0 = hardware)");
        cmd->add_option("--backend", opts.backend, "scalar|threaded")
            ->check(CLI::IsMember({"scalar", "threaded", "noop"}));
    };

    CLI::App* enc = app.add_subcommand("encrypt", "encrypt a file (ECB)");
    add_common(enc, true);
    CLI::App* dec = app.add_subcommand("decrypt", "decrypt a file (ECB)");
    add_common(dec, true);

    CLI::App* ver = app.add_subcommand(
        "verify", "run the embedded known-answer and property suite");

    t3des::bench::SweepSpec spec;
    std::string sweep_name = "workers";
    std::string bench_format = "csv";
    std::string bench_out;
    std::vector<std::size_t> sweep_values;
    std::uint64_t payload_mb = 64;
    CLI::App* ben = app.add_subcommand("bench", "run a benchmark sweep");
    ben->add_option("--sweep", sweep_name, "workers|chunk|workgroup")
        ->check(CLI::IsMember({"workers", "chunk", "workgroup"}));
    ben->add_option("--values", sweep_values,
                    "sweep values (strictly increasing)");
    ben->add_option("--payload-mb", payload_mb, "payload size in MiB");
    ben->add_option("--seed", spec.seed, "payload seed");
    ben->add_option("--reps", spec.repetitions, "timed repetitions");
    ben->add_option("--format", bench_format, "csv|markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    ben->add_option("--out", bench_out, "report file (default stdout)");
    ben->add_option("--chunk-blocks", spec.fixed.chunk_blocks,
                    "fixed blocks per dispatch");
    ben->add_option("--work-group", spec.fixed.work_group,
                    "fixed blocks per worker task");
    ben->add_option("--workers", spec.fixed.workers,
                    "fixed worker count (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (enc->parsed()) return run_crypt(opts, true);
        if (dec->parsed()) return run_crypt(opts, false);
        if (ver->parsed()) {
            const bool pass = t3des::run_verification(std::cout);
            return pass ? 0 : kExitVerifyFailed;
        }
        if (ben->parsed()) {
            if (sweep_name == "workers") {
                spec.variable = t3des::bench::SweepVariable::Workers;
                if (sweep_values.empty()) sweep_values = {1, 2, 4};
            } else if (sweep_name == "chunk") {
                spec.variable = t3des::bench::SweepVariable::ChunkBlocks;
                if (sweep_values.empty()) {
                    sweep_values = {128, 1024, 16384, 131072};
                }
            } else {
                spec.variable = t3des::bench::SweepVariable::WorkGroup;
                if (sweep_values.empty()) sweep_values = {8, 64, 256, 512};
            }
            spec.values = sweep_values;
            spec.payload_bytes = payload_mb << 20;
            return run_bench(spec, bench_format, bench_out);
        }
    } catch (const t3des::KeyFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitKeyFormat;
    } catch (const t3des::PaddingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPadding;
    } catch (const t3des::InputLengthError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputLength;
    } catch (const t3des::IoError& e) {
        std::cerr << "error: " << e.what() << " at byte offset "
                  << e.byte_offset << '\n';
        return kExitIo;
    } catch (const t3des::ParityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
