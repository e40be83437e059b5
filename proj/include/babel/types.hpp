#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace babel {

// 128-bit signed quantity in lowest-denomination units.
using Quantity = __int128;

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

using Digest = std::array<std::uint8_t, 32>;

using PolicyId = Digest;
using Address = Digest;
using TxId = Digest;
using PubKey = Digest;
using Signature = Digest;

// Open address / open key: anybody may spend such an output.
inline constexpr Digest kZeroDigest{};
inline constexpr Address kOpenAddress = kZeroDigest;
inline constexpr PubKey kOpenKey = kZeroDigest;

std::string to_hex(const Digest& d);
Digest digest_from_hex(const std::string& hex);

struct AssetId {
    PolicyId pid{};
    std::string name;  // at most 32 bytes

    auto operator<=>(const AssetId&) const = default;
};

struct Tick {
    std::uint64_t value = 0;

    auto operator<=>(const Tick&) const = default;
};

// Closed tick interval; unbounded above when hi is the u64 maximum.
struct TickInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = std::numeric_limits<std::uint64_t>::max();

    bool contains(Tick t) const { return lo <= t.value && t.value <= hi; }
    bool unboundedAbove() const { return hi == std::numeric_limits<std::uint64_t>::max(); }

    auto operator<=>(const TickInterval&) const = default;
};

struct OutputRef {
    TxId id{};
    std::uint32_t index = 0;

    auto operator<=>(const OutputRef&) const = default;
};

struct Input {
    OutputRef outputRef;
    PubKey key{};

    auto operator<=>(const Input&) const = default;
};

}  // namespace babel
