#include "babel/quantities.hpp"

namespace babel {

Quantities::Quantities(Map entries) : entries_(std::move(entries)) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second == 0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

Quantities Quantities::single(const AssetId& asset, Quantity q) {
    Quantities out;
    out.set(asset, q);
    return out;
}

Quantity Quantities::operator()(const AssetId& asset) const {
    auto it = entries_.find(asset);
    return it == entries_.end() ? 0 : it->second;
}

void Quantities::set(const AssetId& asset, Quantity q) {
    if (q == 0)
        entries_.erase(asset);
    else
        entries_[asset] = q;
}

Quantities Quantities::operator+(const Quantities& rhs) const {
    Quantities out = *this;
    out += rhs;
    return out;
}

Quantities& Quantities::operator+=(const Quantities& rhs) {
    for (const auto& [asset, q] : rhs.entries_) {
        auto it = entries_.find(asset);
        if (it == entries_.end()) {
            entries_.emplace(asset, q);
        } else {
            it->second += q;
            if (it->second == 0) entries_.erase(it);
        }
    }
    return *this;
}

Quantities Quantities::operator-() const {
    Quantities out;
    for (const auto& [asset, q] : entries_) out.entries_.emplace(asset, -q);
    return out;
}

Quantities Quantities::operator-(const Quantities& rhs) const { return *this + (-rhs); }

bool Quantities::leq(const Quantities& rhs) const {
    // a <= b pointwise, including keys present on only one side.
    for (const auto& [asset, q] : entries_)
        if (q > rhs(asset)) return false;
    for (const auto& [asset, q] : rhs.entries_)
        if ((*this)(asset) > q) return false;
    return true;
}

bool Quantities::geqZero() const {
    for (const auto& [asset, q] : entries_)
        if (q < 0) return false;
    return true;
}

Quantities Quantities::positivePart() const {
    Quantities out;
    for (const auto& [asset, q] : entries_)
        if (q > 0) out.entries_.emplace(asset, q);
    return out;
}

Quantities Quantities::negativePart() const {
    Quantities out;
    for (const auto& [asset, q] : entries_)
        if (q < 0) out.entries_.emplace(asset, q);
    return out;
}

}  // namespace babel
