#include "babel/hash.hpp"

#include <openssl/sha.h>

#include <cstring>

namespace babel {

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Address keyAddr(const PubKey& key) { return sha256(key); }

Signature sign(const PubKey& key, const Digest& message) {
    std::vector<std::uint8_t> buf;
    buf.reserve(key.size() + message.size());
    buf.insert(buf.end(), key.begin(), key.end());
    buf.insert(buf.end(), message.begin(), message.end());
    return sha256(buf);
}

bool verify(const PubKey& key, const Signature& sig, const Digest& message) {
    return sign(key, message) == sig;
}

std::string to_hex(const Digest& d) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (auto b : d) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

Digest digest_from_hex(const std::string& hex) {
    if (hex.size() != 64) throw std::invalid_argument("digest hex must be 64 chars");
    auto nibble = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw std::invalid_argument("bad hex digit");
    };
    Digest d{};
    for (std::size_t i = 0; i < 32; ++i)
        d[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    return d;
}

std::string to_string(Quantity q) {
    if (q == 0) return "0";
    bool neg = q < 0;
    // Avoid negating INT128_MIN by peeling digits off the negative value.
    std::string digits;
    Quantity v = q;
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        if (d < 0) d = -d;
        digits.push_back(static_cast<char>('0' + d));
        v /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

Quantity quantity_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty quantity");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("bad quantity: " + s);
    Quantity v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad quantity: " + s);
        v = v * 10 + (neg ? -(s[i] - '0') : (s[i] - '0'));
    }
    return v;
}

}  // namespace babel
