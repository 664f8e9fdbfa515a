#include "t3des/dispatch.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace t3des {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

enum class Direction { Encrypt, Decrypt };

inline Block transform_ref(Block b, const TripleSchedule& ts, Direction d) {
    return d == Direction::Encrypt ? tdes_encrypt_block(b, ts)
                                   : tdes_decrypt_block(b, ts);
}

inline Block transform_fast(Block b, const TripleSchedule& ts, Direction d) {
    return d == Direction::Encrypt ? tdes_encrypt_block_fast(b, ts)
                                   : tdes_decrypt_block_fast(b, ts);
}

void run_blocks_ref(const std::uint8_t* in, std::uint8_t* out,
                    std::size_t blocks, const TripleSchedule& ts,
                    Direction dir) {
    for (std::size_t i = 0; i < blocks; ++i) {
        const Block b = load_block(std::span<const std::uint8_t, 8>(
            in + 8 * i, 8));
        store_block(transform_ref(b, ts, dir),
                    std::span<std::uint8_t, 8>(out + 8 * i, 8));
    }
}

void run_blocks_fast(const std::uint8_t* in, std::uint8_t* out,
                     std::size_t blocks, const TripleSchedule& ts,
                     Direction dir) {
    for (std::size_t i = 0; i < blocks; ++i) {
        const Block b = load_block(std::span<const std::uint8_t, 8>(
            in + 8 * i, 8));
        store_block(transform_fast(b, ts, dir),
                    std::span<std::uint8_t, 8>(out + 8 * i, 8));
    }
}

// One chunk. Workers claim disjoint work groups; output ordering is
// positional, so results do not depend on scheduling.
void run_chunk(const std::uint8_t* in, std::uint8_t* out,
               std::size_t blocks, const TripleSchedule& ts,
               const DispatchConfig& cfg, Direction dir) {
    switch (cfg.backend) {
        case Backend::ScalarReference:
            run_blocks_ref(in, out, blocks, ts, dir);
            return;
        case Backend::NoOpCopy:
            if (out != in) std::memcpy(out, in, blocks * 8);
            return;
        case Backend::Threaded:
            break;
    }
    const std::size_t wg = cfg.work_group;
    const auto groups = static_cast<std::int64_t>(
        blocks / wg + (blocks % wg != 0 ? 1 : 0));
    const int workers = static_cast<int>(resolve_workers(cfg));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
    for (std::int64_t g = 0; g < groups; ++g) {
        const std::size_t begin = static_cast<std::size_t>(g) * wg;
        const std::size_t count = std::min(wg, blocks - begin);
        run_blocks_fast(in + 8 * begin, out + 8 * begin, count, ts, dir);
    }
    (void)workers;
}

void run_batch(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
               const TripleSchedule& ts, const DispatchConfig& cfg,
               Direction dir) {
    if (in.size() % 8 != 0) {
        throw InputLengthError("batch length " + std::to_string(in.size()) +
                               " is not a multiple of 8 bytes");
    }
    if (out.size() != in.size()) {
        throw InputLengthError("output buffer size mismatch");
    }
    // Either fully aliased (in-place, safe: each block is loaded before its
    // slot is stored) or fully disjoint; partial overlap is not supported.
    const auto* ib = in.data();
    const auto* ie = ib + in.size();
    if (out.data() != ib && out.data() < ie && out.data() + out.size() > ib) {
        throw InputLengthError("partially overlapping buffers");
    }
    for (const ChunkSpan& span : plan_dispatch(in.size() / 8, cfg)) {
        run_chunk(in.data() + 8 * span.offset, out.data() + 8 * span.offset,
                  span.length, ts, cfg, dir);
    }
}

StreamReport run_stream(std::istream& source, std::ostream& sink,
                        const TripleSchedule& ts, const DispatchConfig& cfg,
                        PaddingMode pad, Direction dir) {
    StreamReport report;
    const std::size_t chunk_bytes = cfg.chunk_blocks * 8;
    std::vector<std::uint8_t> buf(chunk_bytes);
    std::vector<std::uint8_t> held;  // last decrypted chunk (Pkcs7 strip)

    bool eof = false;
    while (!eof) {
        auto t0 = Clock::now();
        source.read(reinterpret_cast<char*>(buf.data()),
                    static_cast<std::streamsize>(chunk_bytes));
        const auto got = static_cast<std::size_t>(source.gcount());
        if (source.bad()) {
            throw IoError("read failure", report.bytes_in);
        }
        eof = source.eof() || got < chunk_bytes ||
              source.peek() == std::istream::traits_type::eof();
        report.io_seconds += seconds_since(t0);
        report.bytes_in += got;
        if (got == 0 && !(eof && dir == Direction::Encrypt &&
                          pad == PaddingMode::Pkcs7 && report.chunks == 0 &&
                          report.bytes_in == 0)) {
            break;
        }

        std::vector<std::uint8_t> data(buf.begin(), buf.begin() + got);
        if (dir == Direction::Encrypt) {
            if (pad == PaddingMode::Pkcs7 && eof) {
                pkcs7_pad(data);
            } else if (data.size() % 8 != 0) {
                throw InputLengthError(
                    "input length is not a multiple of 8 bytes (use PKCS#7 "
                    "padding for arbitrary lengths)");
            }
            if (data.empty()) break;
        } else {
            if (data.size() % 8 != 0) {
                throw InputLengthError(
                    "ciphertext length not a multiple of 8");
            }
            if (data.empty() && held.empty()) break;
        }

        // In-place transform; bit-equivalence to the out-of-place path is
        // covered by the batch tests.
        t0 = Clock::now();
        run_batch(data, data, ts, cfg, dir);
        report.compute_seconds += seconds_since(t0);
        if (!data.empty()) ++report.chunks;

        if (dir == Direction::Decrypt && pad == PaddingMode::Pkcs7) {
            // Write the previously held chunk, keep this one back until we
            // know whether it is the last.
            if (!held.empty()) {
                t0 = Clock::now();
                sink.write(reinterpret_cast<const char*>(held.data()),
                           static_cast<std::streamsize>(held.size()));
                report.io_seconds += seconds_since(t0);
                if (!sink) throw IoError("write failure", report.bytes_out);
                report.bytes_out += held.size();
            }
            held = std::move(data);
            if (eof) {
                pkcs7_unpad(held);
                if (!held.empty()) {
                    t0 = Clock::now();
                    sink.write(reinterpret_cast<const char*>(held.data()),
                               static_cast<std::streamsize>(held.size()));
                    report.io_seconds += seconds_since(t0);
                    if (!sink) {
                        throw IoError("write failure", report.bytes_out);
                    }
                    report.bytes_out += held.size();
                }
            }
        } else if (!data.empty()) {
            t0 = Clock::now();
            sink.write(reinterpret_cast<const char*>(data.data()),
                       static_cast<std::streamsize>(data.size()));
            report.io_seconds += seconds_since(t0);
            if (!sink) throw IoError("write failure", report.bytes_out);
            report.bytes_out += data.size();
        }
    }

    if (dir == Direction::Decrypt && pad == PaddingMode::Pkcs7 &&
        report.bytes_in == 0) {
        throw PaddingError("empty ciphertext cannot carry PKCS#7 padding");
    }
    const auto t0 = Clock::now();
    sink.flush();
    report.io_seconds += seconds_since(t0);
    return report;
}

}  // namespace

std::vector<ChunkSpan> plan_dispatch(std::size_t total_blocks,
                                     const DispatchConfig& cfg) {
    std::vector<ChunkSpan> plan;
    const std::size_t chunk = cfg.chunk_blocks;
    plan.reserve(total_blocks / chunk + 1);
    for (std::size_t off = 0; off < total_blocks; off += chunk) {
        plan.push_back(ChunkSpan{off, std::min(chunk, total_blocks - off)});
    }
    return plan;
}

void encrypt_batch(std::span<const std::uint8_t> in,
                   std::span<std::uint8_t> out, const TripleSchedule& ts,
                   const DispatchConfig& cfg) {
    run_batch(in, out, ts, cfg, Direction::Encrypt);
}

void decrypt_batch(std::span<const std::uint8_t> in,
                   std::span<std::uint8_t> out, const TripleSchedule& ts,
                   const DispatchConfig& cfg) {
    run_batch(in, out, ts, cfg, Direction::Decrypt);
}

StreamReport encrypt_stream(std::istream& source, std::ostream& sink,
                            const TripleSchedule& ts,
                            const DispatchConfig& cfg, PaddingMode pad) {
    return run_stream(source, sink, ts, cfg, pad, Direction::Encrypt);
}

StreamReport decrypt_stream(std::istream& source, std::ostream& sink,
                            const TripleSchedule& ts,
                            const DispatchConfig& cfg, PaddingMode pad) {
    return run_stream(source, sink, ts, cfg, pad, Direction::Decrypt);
}

void pkcs7_pad(std::vector<std::uint8_t>& data) {
    const auto pad = static_cast<std::uint8_t>(8 - data.size() % 8);
    data.insert(data.end(), pad, pad);
}

void pkcs7_unpad(std::vector<std::uint8_t>& data) {
    if (data.empty() || data.size() % 8 != 0) {
        throw PaddingError("PKCS#7 data length must be a positive multiple "
                           "of 8");
    }
    const std::uint8_t pad = data.back();
    if (pad < 1 || pad > 8) throw PaddingError("bad PKCS#7 pad value");
    for (std::size_t i = data.size() - pad; i < data.size(); ++i) {
        if (data[i] != pad) throw PaddingError("inconsistent PKCS#7 padding");
    }
    data.resize(data.size() - pad);
}

unsigned resolve_workers(const DispatchConfig& cfg) {
    if (cfg.workers != 0) return cfg.workers;
#ifdef _OPENMP
    return static_cast<unsigned>(omp_get_max_threads());
#else
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
#endif
}

}  // namespace t3des
