#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

// Single-block DES (FIPS 46-3). All tables use the standard's 1-based,
// MSB-first bit numbering; the mapping to machine words is: FIPS bit 1 of
// an n-bit quantity is the most significant bit of the n-bit field holding
// it, FIPS bit n is the least significant. Blocks are serialized big-endian.
namespace t3des {

// One 64-bit data block, kept in a native word (FIPS bit 1 = MSB).
using Block = std::uint64_t;

// 16 round subkeys, each 48 bits wide (upper 16 bits zero), in
// encryption order.
using RoundKeySet = std::array<std::uint64_t, 16>;

struct DesKey {
    std::uint64_t raw = 0;
};

class ParityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

Block load_block(std::span<const std::uint8_t, 8> bytes);
void store_block(Block b, std::span<std::uint8_t, 8> out);

// Key schedule: PC-1, 16 rotations, PC-2. Parity bits are discarded by
// PC-1, so keys differing only in parity produce identical schedules.
RoundKeySet key_schedule(DesKey key);

// Reference single-block DES built directly from the plain FIPS tables.
Block encrypt_block(Block block, const RoundKeySet& ks);
Block decrypt_block(Block block, const RoundKeySet& ks);

// Parity helpers. DES keys carry an odd-parity bit in the LSB of each byte.
bool has_odd_parity(DesKey key);
DesKey normalize_parity(DesKey key);

// The four weak keys (self-inverse schedules) and twelve semi-weak keys,
// compared with parity bits masked off.
bool is_weak_key(DesKey key);
bool is_semiweak_key(DesKey key);

namespace detail {

// Generic FIPS-style permutation: bit `table[i]` (1-based from the MSB of
// a `width`-bit input) becomes output bit i+1.
std::uint64_t permute(std::uint64_t value, int width,
                      std::span<const std::uint8_t> table);

// Plain FIPS tables, exposed for the fused fast path and for tests.
extern const std::array<std::uint8_t, 64> IP;
extern const std::array<std::uint8_t, 64> FP;
extern const std::array<std::uint8_t, 48> E;
extern const std::array<std::uint8_t, 32> P;
extern const std::array<std::uint8_t, 56> PC1;
extern const std::array<std::uint8_t, 48> PC2;
extern const std::array<std::uint8_t, 16> SHIFTS;
extern const std::uint8_t SBOX[8][64];

// Feistel function on one 32-bit half, plain-table route.
std::uint32_t feistel(std::uint32_t half, std::uint64_t subkey);

}  // namespace detail

}  // namespace t3des
