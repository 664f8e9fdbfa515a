#include "t3des/tdes.hpp"

#include <cctype>
#include <cstdio>

namespace t3des {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::uint64_t parse_hex64(std::string_view hex16) {
    std::uint64_t v = 0;
    for (char c : hex16) {
        const int n = hex_nibble(c);
        if (n < 0) {
            throw KeyFormatError(std::string("invalid hex character '") + c +
                                 "' in key");
        }
        v = (v << 4) | static_cast<unsigned>(n);
    }
    return v;
}

}  // namespace

TripleKey parse_hex_key(std::string_view hex) {
    TripleKey key;
    switch (hex.size()) {
        case 48:
            key.option = KeyingOption::Option1;
            key.k1.raw = parse_hex64(hex.substr(0, 16));
            key.k2.raw = parse_hex64(hex.substr(16, 16));
            key.k3.raw = parse_hex64(hex.substr(32, 16));
            break;
        case 32:
            key.option = KeyingOption::Option2;
            key.k1.raw = parse_hex64(hex.substr(0, 16));
            key.k2.raw = parse_hex64(hex.substr(16, 16));
            key.k3 = key.k1;
            break;
        case 16:
            key.option = KeyingOption::Option3;
            key.k1.raw = parse_hex64(hex);
            key.k2 = key.k1;
            key.k3 = key.k1;
            break;
        default:
            throw KeyFormatError(
                "key must be 16, 32 or 48 hex characters, got " +
                std::to_string(hex.size()));
    }
    return key;
}

std::string to_hex(const TripleKey& key) {
    char buf[49];
    int n = 0;
    switch (key.option) {
        case KeyingOption::Option1:
            n = std::snprintf(buf, sizeof buf, "%016llX%016llX%016llX",
                              (unsigned long long)key.k1.raw,
                              (unsigned long long)key.k2.raw,
                              (unsigned long long)key.k3.raw);
            break;
        case KeyingOption::Option2:
            n = std::snprintf(buf, sizeof buf, "%016llX%016llX",
                              (unsigned long long)key.k1.raw,
                              (unsigned long long)key.k2.raw);
            break;
        case KeyingOption::Option3:
            n = std::snprintf(buf, sizeof buf, "%016llX",
                              (unsigned long long)key.k1.raw);
            break;
    }
    return std::string(buf, static_cast<size_t>(n));
}

TripleSchedule triple_schedule(const TripleKey& key) {
    return TripleSchedule{key_schedule(key.k1), key_schedule(key.k2),
                          key_schedule(key.k3)};
}

Block tdes_encrypt_block(Block block, const TripleSchedule& ts) {
    return encrypt_block(decrypt_block(encrypt_block(block, ts.pass1),
                                       ts.pass2),
                         ts.pass3);
}

Block tdes_decrypt_block(Block block, const TripleSchedule& ts) {
    return decrypt_block(encrypt_block(decrypt_block(block, ts.pass3),
                                       ts.pass2),
                         ts.pass1);
}

// ---- fast path -----------------------------------------------------------
//
// The fused tables combine each S-box with the P permutation: SP[i][x] is
// P applied to S_i(x) placed at its output position. The round input to
// S-box i is six consecutive bits of the E expansion of R, which are bits
// 4i..4i+5 of R extended circularly by one bit on each side.

namespace {

struct SpTables {
    std::uint32_t sp[8][64];
};

SpTables build_sp_tables() {
    using namespace detail;
    SpTables t{};
    for (int i = 0; i < 8; ++i) {
        for (unsigned x = 0; x < 64; ++x) {
            const unsigned row = ((x >> 4) & 2u) | (x & 1u);
            const unsigned col = (x >> 1) & 0xF;
            const std::uint32_t placed =
                static_cast<std::uint32_t>(SBOX[i][row * 16 + col])
                << (28 - 4 * i);
            t.sp[i][x] = static_cast<std::uint32_t>(permute(placed, 32, P));
        }
    }
    return t;
}

const SpTables kSp = build_sp_tables();

inline std::uint32_t round_f(std::uint32_t r, std::uint64_t subkey) {
    // 34-bit window: R's LSB, then R, then R's MSB (circular E expansion).
    const std::uint64_t v = (static_cast<std::uint64_t>(r & 1u) << 33) |
                            (static_cast<std::uint64_t>(r) << 1) | (r >> 31);
    std::uint32_t out = 0;
    for (int i = 0; i < 8; ++i) {
        const unsigned six = static_cast<unsigned>(
            ((v >> (28 - 4 * i)) ^ (subkey >> (42 - 6 * i))) & 0x3F);
        out |= kSp.sp[i][six];
    }
    return out;
}

struct Halves {
    std::uint32_t l, r;
};

// 16 rounds plus the pass-final swap. Between EDE passes the inner FP∘IP
// pairs cancel, so consecutive passes chain directly on the swapped halves.
inline Halves run_pass(Halves h, const RoundKeySet& ks, bool decrypt) {
    for (int i = 0; i < 16; ++i) {
        const std::uint64_t k = decrypt ? ks[15 - i] : ks[i];
        const std::uint32_t next = h.l ^ round_f(h.r, k);
        h.l = h.r;
        h.r = next;
    }
    return Halves{h.r, h.l};
}

inline Block fused_tdes(Block block, const RoundKeySet& a, bool inv_a,
                        const RoundKeySet& b, bool inv_b,
                        const RoundKeySet& c, bool inv_c) {
    const std::uint64_t p = detail::permute(block, 64, detail::IP);
    Halves h{static_cast<std::uint32_t>(p >> 32),
             static_cast<std::uint32_t>(p)};
    h = run_pass(h, a, inv_a);
    h = run_pass(h, b, inv_b);
    h = run_pass(h, c, inv_c);
    const std::uint64_t pre =
        (static_cast<std::uint64_t>(h.l) << 32) | h.r;
    return detail::permute(pre, 64, detail::FP);
}

}  // namespace

Block tdes_encrypt_block_fast(Block block, const TripleSchedule& ts) {
    return fused_tdes(block, ts.pass1, false, ts.pass2, true, ts.pass3,
                      false);
}

Block tdes_decrypt_block_fast(Block block, const TripleSchedule& ts) {
    return fused_tdes(block, ts.pass3, true, ts.pass2, false, ts.pass1,
                      true);
}

}  // namespace t3des
