#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>

#include "t3des/des.hpp"

// Embedded known-answer vectors and the quick self-check suite behind the
// `verify` CLI subcommand.
namespace t3des {

struct DesKat {
    std::uint64_t key;
    std::uint64_t plaintext;
    std::uint64_t ciphertext;
};

struct TdesKat {
    std::string_view key_hex;
    std::string_view plaintext_hex;  // one block
    std::string_view ciphertext_hex;
};

std::span<const DesKat> des_kats();
std::span<const TdesKat> tdes_kats();

// The 16 subkeys the schedule must produce for key 133457799BBCDFF1
// (the classic worked example; cross-checked against an independent
// implementation).
std::span<const std::uint64_t> walkthrough_subkeys();
constexpr std::uint64_t kWalkthroughKey = 0x133457799BBCDFF1ull;

// Runs all KAT vectors plus a handful of structural properties (round
// trips, EDE collapse, complementation). Prints one line per group.
bool run_verification(std::ostream& out);

}  // namespace t3des
