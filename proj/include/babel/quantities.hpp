#pragma once

#include <map>

#include "babel/types.hpp"

namespace babel {

// A token bundle: finitely-supported map AssetId -> Quantity, forming an
// abelian group under pointwise addition. The support is kept minimal;
// no entry ever maps to zero.
class Quantities {
public:
    using Map = std::map<AssetId, Quantity>;

    Quantities() = default;
    explicit Quantities(Map entries);

    static Quantities single(const AssetId& asset, Quantity q);

    Quantity operator()(const AssetId& asset) const;
    void set(const AssetId& asset, Quantity q);

    const Map& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t supportSize() const { return entries_.size(); }

    Quantities operator+(const Quantities& rhs) const;
    Quantities operator-() const;
    Quantities operator-(const Quantities& rhs) const;
    Quantities& operator+=(const Quantities& rhs);

    bool operator==(const Quantities&) const = default;

    // Pointwise partial order.
    bool leq(const Quantities& rhs) const;
    bool geqZero() const;

    // Keeps only the strictly positive / strictly negative entries.
    // positivePart() + negativePart() == *this.
    Quantities positivePart() const;
    Quantities negativePart() const;

private:
    Map entries_;
};

inline Quantities qAdd(const Quantities& a, const Quantities& b) { return a + b; }
inline Quantities qNeg(const Quantities& a) { return -a; }
inline bool qLeq(const Quantities& a, const Quantities& b) { return a.leq(b); }
inline bool qGeqZero(const Quantities& a) { return a.geqZero(); }

}  // namespace babel
