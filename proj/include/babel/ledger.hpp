#pragma once

#include <set>
#include <stdexcept>

#include "babel/tx.hpp"

namespace babel {

struct MissingTx : std::runtime_error {
    explicit MissingTx(const TxId& id);
    TxId id;
};

struct IndexOutOfRange : std::runtime_error {
    IndexOutOfRange(const TxId& id, std::uint32_t index, std::size_t outputs);
    OutputRef ref;
};

// {(txId(t), i) : 0 <= i < |t.outputs|}. Output indices are 0-based.
std::set<OutputRef> unspentTxOutputs(const Tx& t);

// The ledger's UTXO set, by the newest-first recursion:
// unspentOutputs(t::l) = (unspentOutputs(l) \ refs(t.inputs)) u unspentTxOutputs(t).
std::set<OutputRef> unspentOutputs(const Ledger& l);

const Tx& lookupTx(const Ledger& l, const TxId& id);

const Output& getSpentOutput(const Input& i, const Ledger& l);

}  // namespace babel
