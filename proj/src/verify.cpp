#include "t3des/verify.hpp"

#include <cstdio>
#include <random>

#include "t3des/tdes.hpp"

namespace t3des {

namespace {

// DES single-block vectors: the worked-example key, the all-zero-output
// vector, and NIST/SP 500-20 style fixtures. All pre-validated against an
// independent implementation.
constexpr DesKat kDesKats[] = {
    {0x133457799BBCDFF1, 0x0123456789ABCDEF, 0x85E813540F0AB405},
    {0x0E329232EA6D0D73, 0x8787878787878787, 0x0000000000000000},
    {0x0101010101010101, 0x0000000000000000, 0x8CA64DE9C1B123A7},
    {0x8001010101010101, 0x0000000000000000, 0x95A8D72813DAA94D},
    {0x7CA110454A1A6E57, 0x01A1D6D039776742, 0x690F5B0D9A26939B},
    {0x0131D9619DC1376E, 0x5CD54CA83DEF57DA, 0x7A389D10354BD271},
};

// 3DES vectors covering all three keying options.
constexpr TdesKat kTdesKats[] = {
    {"0123456789ABCDEF23456789ABCDEF01456789ABCDEF0123",
     "5468652071756663", "A826FD8CE53B855F"},
    {"133457799BBCDFF10E329232EA6D0D737CA110454A1A6E57",
     "0123456789ABCDEF", "1A493D768C1B9432"},
    {"0123456789ABCDEF23456789ABCDEF01", "4E6F772069732074",
     "B7835779EE26ACB7"},
    {"0123456789ABCDEF", "4E6F772069732074", "3FA40E8A984D4815"},
};

constexpr std::uint64_t kWalkthroughSubkeys[16] = {
    0x1B02EFFC7072, 0x79AED9DBC9E5, 0x55FC8A42CF99, 0x72ADD6DB351D,
    0x7CEC07EB53A8, 0x63A53E507B2F, 0xEC84B7F618BC, 0xF78A3AC13BFB,
    0xE0DBEBEDE781, 0xB1F347BA464F, 0x215FD3DED386, 0x7571F59467E9,
    0x97C5D1FABA41, 0x5F43B7F2E73A, 0xBF918D3D3F0A, 0xCB3D8B0E17F5,
};

std::uint64_t parse_hex64(std::string_view hex) {
    std::uint64_t v = 0;
    for (char c : hex) {
        v = (v << 4) | static_cast<unsigned>(
                           c <= '9' ? c - '0'
                                    : (c & 0x5F) - 'A' + 10);
    }
    return v;
}

bool check(std::ostream& out, const char* name, bool pass) {
    out << (pass ? "ok   " : "FAIL ") << name << '\n';
    return pass;
}

}  // namespace

std::span<const DesKat> des_kats() { return kDesKats; }
std::span<const TdesKat> tdes_kats() { return kTdesKats; }
std::span<const std::uint64_t> walkthrough_subkeys() {
    return kWalkthroughSubkeys;
}

bool run_verification(std::ostream& out) {
    bool all = true;

    bool pass = true;
    const RoundKeySet ks = key_schedule(DesKey{kWalkthroughKey});
    for (int i = 0; i < 16; ++i) pass &= ks[i] == kWalkthroughSubkeys[i];
    all &= check(out, "key schedule walkthrough", pass);

    pass = true;
    for (const DesKat& kat : kDesKats) {
        const RoundKeySet s = key_schedule(DesKey{kat.key});
        pass &= encrypt_block(kat.plaintext, s) == kat.ciphertext;
        pass &= decrypt_block(kat.ciphertext, s) == kat.plaintext;
    }
    all &= check(out, "DES known-answer vectors", pass);

    pass = true;
    for (const TdesKat& kat : kTdesKats) {
        const TripleSchedule ts =
            triple_schedule(parse_hex_key(kat.key_hex));
        const Block pt = parse_hex64(kat.plaintext_hex);
        const Block ct = parse_hex64(kat.ciphertext_hex);
        pass &= tdes_encrypt_block(pt, ts) == ct;
        pass &= tdes_decrypt_block(ct, ts) == pt;
        pass &= tdes_encrypt_block_fast(pt, ts) == ct;
        pass &= tdes_decrypt_block_fast(ct, ts) == pt;
    }
    all &= check(out, "3DES known-answer vectors (all keying options)", pass);

    std::mt19937_64 rng(0xC0FFEE);
    pass = true;
    for (int i = 0; i < 256 && pass; ++i) {
        const DesKey k{rng()};
        const Block x = rng();
        const RoundKeySet s = key_schedule(k);
        pass &= decrypt_block(encrypt_block(x, s), s) == x;
        // Complementation: E_{~k}(~x) == ~E_k(x).
        pass &= encrypt_block(~x, key_schedule(DesKey{~k.raw})) ==
                ~encrypt_block(x, s);
    }
    all &= check(out, "DES round-trip and complementation", pass);

    pass = true;
    for (int i = 0; i < 256 && pass; ++i) {
        const std::uint64_t k = rng();
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llX", (unsigned long long)k);
        const TripleSchedule ts = triple_schedule(parse_hex_key(hex));
        const Block x = rng();
        // Option 3 collapses EDE to single DES.
        pass &= tdes_encrypt_block(x, ts) ==
                encrypt_block(x, key_schedule(DesKey{k}));
        pass &= tdes_decrypt_block(tdes_encrypt_block(x, ts), ts) == x;
        pass &= tdes_encrypt_block_fast(x, ts) == tdes_encrypt_block(x, ts);
    }
    all &= check(out, "EDE collapse and fast-kernel equivalence", pass);

    out << (all ? "verification PASSED\n" : "verification FAILED\n");
    return all;
}

}  // namespace t3des
