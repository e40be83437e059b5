#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "babel/types.hpp"

namespace babel {

Digest sha256(std::span<const std::uint8_t> data);

// Address of a public key: the hash of the key bytes.
Address keyAddr(const PubKey& key);

// Simulation-grade signature scheme with identity keypairs: the "secret"
// equals the public key. Pluggable behind these two entry points.
Signature sign(const PubKey& key, const Digest& message);
bool verify(const PubKey& key, const Signature& sig, const Digest& message);

}  // namespace babel
