#pragma once

#include <span>
#include <vector>

#include "babel/policy.hpp"
#include "babel/quantities.hpp"
#include "babel/types.hpp"

namespace babel {

struct Output {
    Address addr{};
    Quantities value;

    bool operator==(const Output&) const = default;
};

struct Tx {
    // Kept sorted and deduplicated; set semantics over (outputRef, key).
    std::vector<Input> inputs;
    std::vector<Output> outputs;  // order is significant (indices)
    TickInterval validityInterval;
    Quantities forge;
    std::vector<PolicyScript> scripts;   // set, sorted by canonical encoding
    std::vector<Signature> sigs;         // set, sorted

    void normalize();  // restore set invariants after field edits

    bool operator==(const Tx& rhs) const;
};

// Newest-first: front() is the most recent transaction.
struct Ledger {
    std::vector<Tx> txs;

    bool empty() const { return txs.empty(); }
    bool operator==(const Ledger&) const = default;
};

// Application order = list order; first element applied first. Nonempty.
struct Batch {
    std::vector<Tx> txs;

    bool operator==(const Batch&) const = default;
};

// Canonical, length-prefixed, field-ordered binary encoding. All integers
// big-endian. The sigs field is excluded from the txId digest so that
// signatures over the id are well defined.
std::vector<std::uint8_t> encodeTx(const Tx& t);
Tx decodeTx(std::span<const std::uint8_t> data);

TxId txId(const Tx& t);

// Signs with every given key over txId and installs the signatures.
void signTx(Tx& t, const std::vector<PubKey>& keys);

}  // namespace babel
