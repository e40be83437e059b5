#include "babel/policy.hpp"

#include "babel/hash.hpp"

namespace babel {

std::vector<std::uint8_t> encodePolicy(const PolicyScript& s) {
    std::vector<std::uint8_t> out;
    out.push_back(static_cast<std::uint8_t>(s.kind));
    switch (s.kind) {
        case PolicyScript::Kind::SignedBy:
            out.insert(out.end(), s.key.begin(), s.key.end());
            break;
        case PolicyScript::Kind::ForbidPairProduction: {
            auto innerBytes = encodePolicy(*s.inner);
            out.insert(out.end(), innerBytes.begin(), innerBytes.end());
            break;
        }
        default:
            break;
    }
    return out;
}

PolicyScript decodePolicy(std::span<const std::uint8_t> data, std::size_t& pos) {
    if (pos >= data.size()) throw std::invalid_argument("truncated policy encoding");
    auto kind = static_cast<PolicyScript::Kind>(data[pos++]);
    switch (kind) {
        case PolicyScript::Kind::AlwaysTrue:
            return PolicyScript::alwaysTrue();
        case PolicyScript::Kind::AlwaysFalse:
            return PolicyScript::alwaysFalse();
        case PolicyScript::Kind::SignedBy: {
            if (pos + 32 > data.size()) throw std::invalid_argument("truncated policy key");
            PubKey k{};
            std::copy(data.begin() + pos, data.begin() + pos + 32, k.begin());
            pos += 32;
            return PolicyScript::signedBy(k);
        }
        case PolicyScript::Kind::ForbidPairProduction:
            return PolicyScript::forbidPairProduction(decodePolicy(data, pos));
        case PolicyScript::Kind::PrimaryCurrency:
            return PolicyScript::primaryCurrency();
    }
    throw std::invalid_argument("unknown policy kind");
}

PolicyId scriptAddr(const PolicyScript& s) { return sha256(encodePolicy(s)); }

bool operator==(const PolicyScript& a, const PolicyScript& b) {
    return encodePolicy(a) == encodePolicy(b);
}

bool operator<(const PolicyScript& a, const PolicyScript& b) {
    return encodePolicy(a) < encodePolicy(b);
}

}  // namespace babel
