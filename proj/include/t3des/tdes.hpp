#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "t3des/des.hpp"

// Triple-DES EDE keying over the DES core: one 48-subkey schedule built
// up front, then pure three-pass block transforms.
namespace t3des {

enum class KeyingOption {
    Option1,  // three independent keys, 24 key bytes
    Option2,  // k3 = k1, 16 key bytes
    Option3,  // k1 = k2 = k3, 8 key bytes
};

struct TripleKey {
    DesKey k1, k2, k3;
    KeyingOption option = KeyingOption::Option1;
};

class KeyFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Hex key string: 48 chars -> Option 1, 32 -> Option 2, 16 -> Option 3.
// Throws KeyFormatError on bad length or non-hex characters.
TripleKey parse_hex_key(std::string_view hex);

std::string to_hex(const TripleKey& key);

// All 48 round keys, pass-major (16 for k1, then k2, then k3), computed
// once and immutable afterwards. Safe to share across workers.
struct TripleSchedule {
    RoundKeySet pass1, pass2, pass3;
};

TripleSchedule triple_schedule(const TripleKey& key);

// Reference EDE transforms, composed from the plain-table DES core:
// encrypt = E_k3(D_k2(E_k1(x))), decrypt = D_k1(E_k2(D_k3(x))).
Block tdes_encrypt_block(Block block, const TripleSchedule& ts);
Block tdes_decrypt_block(Block block, const TripleSchedule& ts);

// Fast-path kernel: the same function computed with fused S-box/P lookup
// tables and a single IP/FP pair around all 48 rounds (the inner FP∘IP
// pairs between passes cancel). Bit-identical to the reference transforms;
// the test suite holds both routes against each other.
Block tdes_encrypt_block_fast(Block block, const TripleSchedule& ts);
Block tdes_decrypt_block_fast(Block block, const TripleSchedule& ts);

}  // namespace t3des
