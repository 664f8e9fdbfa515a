#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "t3des/tdes.hpp"

// ECB-mode batch engine: the input is partitioned into fixed-size chunks
// of 64-bit blocks, each chunk is dispatched to a backend, and inside a
// chunk work is handed out in work-group granularity. Blocks are fully
// independent, so output is bit-identical across backends and worker
// counts.
namespace t3des {

enum class Backend {
    ScalarReference,  // serial loop over the plain-table reference cipher
    Threaded,         // OpenMP workers over work groups, fused-table kernel
    NoOpCopy,         // copies input to output; timing instrumentation only
};

struct DispatchConfig {
    std::size_t chunk_blocks = 131072;  // blocks per dispatch
    std::size_t work_group = 256;       // blocks per worker task
    unsigned workers = 0;               // 0 = hardware default
    Backend backend = Backend::Threaded;
};

enum class PaddingMode { None, Pkcs7 };

struct ChunkSpan {
    std::size_t offset;  // in blocks
    std::size_t length;  // in blocks
};

// Spans are disjoint, contiguous, and cover exactly [0, total_blocks);
// every span has length chunk_blocks except possibly the last.
std::vector<ChunkSpan> plan_dispatch(std::size_t total_blocks,
                                     const DispatchConfig& cfg);

class InputLengthError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PaddingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    IoError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what), byte_offset(offset) {}
    std::uint64_t byte_offset;
};

// Out-of-place batch transforms. `in` and `out` must be the same length,
// a multiple of 8 bytes, and must not overlap. Output block i is the
// EDE transform of input block i.
void encrypt_batch(std::span<const std::uint8_t> in,
                   std::span<std::uint8_t> out, const TripleSchedule& ts,
                   const DispatchConfig& cfg);
void decrypt_batch(std::span<const std::uint8_t> in,
                   std::span<std::uint8_t> out, const TripleSchedule& ts,
                   const DispatchConfig& cfg);

struct StreamReport {
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    std::uint64_t chunks = 0;
    double compute_seconds = 0.0;  // block transforms only
    double io_seconds = 0.0;       // reads and writes
};

// Chunked stream encryption: sink receives the encrypted chunks in source
// order. With PaddingMode::None the source length must be a multiple of 8.
StreamReport encrypt_stream(std::istream& source, std::ostream& sink,
                            const TripleSchedule& ts,
                            const DispatchConfig& cfg, PaddingMode pad);
StreamReport decrypt_stream(std::istream& source, std::ostream& sink,
                            const TripleSchedule& ts,
                            const DispatchConfig& cfg, PaddingMode pad);

// PKCS#7 over 8-byte blocks: always appends 1..8 bytes.
void pkcs7_pad(std::vector<std::uint8_t>& data);
// Throws PaddingError on malformed padding.
void pkcs7_unpad(std::vector<std::uint8_t>& data);

// Effective worker count for a config (resolves workers == 0).
unsigned resolve_workers(const DispatchConfig& cfg);

}  // namespace t3des
