#pragma once

#include <memory>
#include <span>
#include <vector>

#include "babel/types.hpp"

namespace babel {

// Closed set of data-encoded forging policy scripts. A script's address (its
// policy id) is the hash of the canonical encoding below:
//   0x01 AlwaysTrue
//   0x02 AlwaysFalse
//   0x03 SignedBy + 32-byte key
//   0x04 ForbidPairProduction + inner encoding
//   0x05 PrimaryCurrency
struct PolicyScript {
    enum class Kind : std::uint8_t {
        AlwaysTrue = 0x01,
        AlwaysFalse = 0x02,
        SignedBy = 0x03,
        ForbidPairProduction = 0x04,
        PrimaryCurrency = 0x05,
    };

    Kind kind = Kind::AlwaysTrue;
    PubKey key{};                          // SignedBy only
    std::shared_ptr<PolicyScript> inner;   // ForbidPairProduction only

    static PolicyScript alwaysTrue() { return {Kind::AlwaysTrue, {}, nullptr}; }
    static PolicyScript alwaysFalse() { return {Kind::AlwaysFalse, {}, nullptr}; }
    static PolicyScript signedBy(const PubKey& k) { return {Kind::SignedBy, k, nullptr}; }
    static PolicyScript forbidPairProduction(PolicyScript i) {
        return {Kind::ForbidPairProduction, {}, std::make_shared<PolicyScript>(std::move(i))};
    }
    static PolicyScript primaryCurrency() { return {Kind::PrimaryCurrency, {}, nullptr}; }
};

std::vector<std::uint8_t> encodePolicy(const PolicyScript& s);
PolicyScript decodePolicy(std::span<const std::uint8_t> data, std::size_t& pos);

PolicyId scriptAddr(const PolicyScript& s);

bool operator==(const PolicyScript& a, const PolicyScript& b);
// Total order on canonical encodings; used for deterministic set layout.
bool operator<(const PolicyScript& a, const PolicyScript& b);

}  // namespace babel
