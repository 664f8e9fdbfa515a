#include <doctest.h>

#include <random>
#include <sstream>

#include "t3des/dispatch.hpp"

using namespace t3des;

namespace {

const TripleKey kKey = parse_hex_key(
    "0123456789ABCDEF23456789ABCDEF01456789ABCDEF0123");
const TripleSchedule kTs = triple_schedule(kKey);

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::vector<std::uint8_t> v(n);
    std::mt19937_64 rng(seed);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng());
    return v;
}

std::vector<std::uint8_t> encrypt_copy(const std::vector<std::uint8_t>& in,
                                       const DispatchConfig& cfg) {
    std::vector<std::uint8_t> out(in.size());
    encrypt_batch(in, out, kTs, cfg);
    return out;
}

}  // namespace

TEST_CASE("plan_dispatch covers the input exactly") {
    DispatchConfig cfg;
    cfg.chunk_blocks = 131072;
    const auto one = plan_dispatch(131072, cfg);
    REQUIRE(one.size() == 1);
    CHECK(one[0].offset == 0);
    CHECK(one[0].length == 131072);

    CHECK(plan_dispatch(0, cfg).empty());

    const auto three = plan_dispatch(300000, cfg);
    REQUIRE(three.size() == 3);
    CHECK(three[0].offset == 0);
    CHECK(three[0].length == 131072);
    CHECK(three[1].offset == 131072);
    CHECK(three[1].length == 131072);
    CHECK(three[2].offset == 262144);
    CHECK(three[2].length == 37856);
}

TEST_CASE("plan_dispatch brute-force coverage") {
    // Spans must partition [0, total) exactly: disjoint, contiguous, every
    // span full-size except possibly the last.
    DispatchConfig cfg;
    for (std::size_t chunk = 1; chunk <= 64; ++chunk) {
        cfg.chunk_blocks = chunk;
        for (std::size_t total = 0; total <= 10000; total += 7) {
            const auto plan = plan_dispatch(total, cfg);
            std::size_t expect_off = 0;
            for (std::size_t i = 0; i < plan.size(); ++i) {
                REQUIRE(plan[i].offset == expect_off);
                REQUIRE(plan[i].length >= 1);
                if (i + 1 < plan.size()) REQUIRE(plan[i].length == chunk);
                expect_off += plan[i].length;
            }
            REQUIRE(expect_off == total);
        }
    }
}

TEST_CASE("singleton batch equals the block transform") {
    std::uint8_t in[8] = {1, 2, 3, 4, 5, 6, 7, 8};
    std::uint8_t out[8];
    DispatchConfig cfg;
    for (Backend b : {Backend::ScalarReference, Backend::Threaded}) {
        cfg.backend = b;
        encrypt_batch(std::span<const std::uint8_t>(in, 8),
                      std::span<std::uint8_t>(out, 8), kTs, cfg);
        const Block expect = tdes_encrypt_block(
            load_block(std::span<const std::uint8_t, 8>(in)), kTs);
        CHECK(load_block(std::span<const std::uint8_t, 8>(out)) == expect);
    }
}

TEST_CASE("ECB determinism: identical blocks give identical ciphertext") {
    std::vector<std::uint8_t> in(16);
    for (int i = 0; i < 8; ++i) in[i] = in[i + 8] = std::uint8_t(i * 17);
    DispatchConfig cfg;
    const auto out = encrypt_copy(in, cfg);
    CHECK(std::equal(out.begin(), out.begin() + 8, out.begin() + 8));
}

TEST_CASE("threaded backend matches the scalar reference") {
    const auto in = random_bytes(1 << 20, 42);  // 1 MB
    DispatchConfig scalar;
    scalar.backend = Backend::ScalarReference;
    const auto expect = encrypt_copy(in, scalar);

    DispatchConfig threaded;
    threaded.backend = Backend::Threaded;
    threaded.workers = 8;
    CHECK(encrypt_copy(in, threaded) == expect);

    // And for decryption.
    std::vector<std::uint8_t> back(in.size());
    decrypt_batch(expect, back, kTs, threaded);
    CHECK(back == in);
}

TEST_CASE("ciphertext is invariant under chunk and work-group choices") {
    const auto in = random_bytes(64 * 1024 + 8 * 3, 43);
    DispatchConfig base;
    const auto expect = encrypt_copy(in, base);
    for (std::size_t chunk : {1ul, 7ul, 1024ul}) {
        for (std::size_t wg : {1ul, 3ul, 256ul}) {
            for (unsigned workers : {1u, 2u, 5u}) {
                DispatchConfig cfg;
                cfg.chunk_blocks = chunk;
                cfg.work_group = wg;
                cfg.workers = workers;
                CAPTURE(chunk);
                CAPTURE(wg);
                CAPTURE(workers);
                REQUIRE(encrypt_copy(in, cfg) == expect);
            }
        }
    }
}

TEST_CASE("block independence across a split") {
    const auto in = random_bytes(4096, 44);
    DispatchConfig cfg;
    const auto whole = encrypt_copy(in, cfg);
    for (std::size_t split : {8ul, 1024ul, 4088ul}) {
        std::vector<std::uint8_t> a(in.begin(), in.begin() + split);
        std::vector<std::uint8_t> b(in.begin() + split, in.end());
        auto ea = encrypt_copy(a, cfg);
        const auto eb = encrypt_copy(b, cfg);
        ea.insert(ea.end(), eb.begin(), eb.end());
        REQUIRE(ea == whole);
    }
}

TEST_CASE("repeated threaded runs are deterministic") {
    const auto in = random_bytes(256 * 1024, 45);
    DispatchConfig cfg;
    cfg.workers = 8;
    cfg.work_group = 16;
    const auto first = encrypt_copy(in, cfg);
    for (int i = 0; i < 5; ++i) REQUIRE(encrypt_copy(in, cfg) == first);
}

TEST_CASE("in-place transform is bit-equivalent to out-of-place") {
    const auto in = random_bytes(64 * 1024, 49);
    for (Backend b : {Backend::ScalarReference, Backend::Threaded}) {
        DispatchConfig cfg;
        cfg.backend = b;
        cfg.chunk_blocks = 1000;
        cfg.work_group = 16;
        const auto expect = encrypt_copy(in, cfg);

        auto inplace = in;
        encrypt_batch(inplace, inplace, kTs, cfg);
        REQUIRE(inplace == expect);

        decrypt_batch(inplace, inplace, kTs, cfg);
        REQUIRE(inplace == in);
    }
}

TEST_CASE("partially overlapping buffers are rejected") {
    std::vector<std::uint8_t> buf(24);
    DispatchConfig cfg;
    CHECK_THROWS_AS(
        encrypt_batch(std::span<const std::uint8_t>(buf.data(), 16),
                      std::span<std::uint8_t>(buf.data() + 8, 16), kTs, cfg),
        InputLengthError);
}

TEST_CASE("batch rejects ragged input") {
    std::vector<std::uint8_t> in(9), out(9);
    DispatchConfig cfg;
    CHECK_THROWS_AS(encrypt_batch(in, out, kTs, cfg), InputLengthError);
}

TEST_CASE("PKCS#7 round trip for all lengths 0..64") {
    std::mt19937_64 rng(46);
    for (std::size_t len = 0; len <= 64; ++len) {
        std::vector<std::uint8_t> data(len);
        for (auto& b : data) b = static_cast<std::uint8_t>(rng());
        const auto original = data;
        pkcs7_pad(data);
        CHECK(data.size() % 8 == 0);
        CHECK(data.size() > original.size());
        pkcs7_unpad(data);
        REQUIRE(data == original);
    }
}

TEST_CASE("PKCS#7 unpad rejects malformed padding") {
    std::vector<std::uint8_t> bad(8, 0);
    CHECK_THROWS_AS(pkcs7_unpad(bad), PaddingError);  // pad value 0
    bad.assign(8, 9);
    CHECK_THROWS_AS(pkcs7_unpad(bad), PaddingError);  // pad value > 8
    bad = {1, 2, 3, 4, 5, 6, 3, 2};  // inconsistent trailing bytes
    CHECK_THROWS_AS(pkcs7_unpad(bad), PaddingError);
    bad.clear();
    CHECK_THROWS_AS(pkcs7_unpad(bad), PaddingError);
}

TEST_CASE("empty stream with no padding") {
    std::istringstream in;
    std::ostringstream out;
    DispatchConfig cfg;
    const StreamReport r =
        encrypt_stream(in, out, kTs, cfg, PaddingMode::None);
    CHECK(r.bytes_in == 0);
    CHECK(r.bytes_out == 0);
    CHECK(r.chunks == 0);
    CHECK(out.str().empty());
}

TEST_CASE("stream round trip with PKCS#7 across chunk boundaries") {
    DispatchConfig cfg;
    cfg.chunk_blocks = 16;  // force several chunks
    std::mt19937_64 rng(47);
    for (std::size_t len : {0ul, 1ul, 7ul, 8ul, 127ul, 128ul, 129ul,
                            1000ul}) {
        std::string payload(len, '\0');
        for (auto& c : payload) c = static_cast<char>(rng());
        std::istringstream in(payload);
        std::ostringstream mid;
        encrypt_stream(in, mid, kTs, cfg, PaddingMode::Pkcs7);
        CHECK(mid.str().size() % 8 == 0);
        CHECK(mid.str().size() > len);

        std::istringstream back(mid.str());
        std::ostringstream out;
        decrypt_stream(back, out, kTs, cfg, PaddingMode::Pkcs7);
        CAPTURE(len);
        REQUIRE(out.str() == payload);
    }
}

TEST_CASE("stream with None padding requires multiple-of-8 input") {
    std::istringstream in(std::string(9, 'x'));
    std::ostringstream out;
    DispatchConfig cfg;
    CHECK_THROWS_AS(encrypt_stream(in, out, kTs, cfg, PaddingMode::None),
                    InputLengthError);
}

TEST_CASE("stream report counts chunks and bytes") {
    const std::string payload(1 << 20, 'a');  // 1 MB = 131072 blocks
    std::istringstream in(payload);
    std::ostringstream out;
    DispatchConfig cfg;  // default chunk_blocks = 131072
    const StreamReport r =
        encrypt_stream(in, out, kTs, cfg, PaddingMode::None);
    CHECK(r.bytes_in == payload.size());
    CHECK(r.bytes_out == payload.size());
    CHECK(r.chunks == 1);
    CHECK(out.str().size() == payload.size());
}

TEST_CASE("stream decrypt round trip without padding") {
    const auto in = random_bytes(4096, 48);
    DispatchConfig cfg;
    cfg.chunk_blocks = 64;
    std::istringstream src(std::string(in.begin(), in.end()));
    std::ostringstream enc;
    encrypt_stream(src, enc, kTs, cfg, PaddingMode::None);
    std::istringstream encs(enc.str());
    std::ostringstream dec;
    decrypt_stream(encs, dec, kTs, cfg, PaddingMode::None);
    const std::string& round = dec.str();
    REQUIRE(round.size() == in.size());
    REQUIRE(std::equal(round.begin(), round.end(), in.begin(),
                       [](char a, std::uint8_t b) {
                           return static_cast<std::uint8_t>(a) == b;
                       }));
}
