#include "babel/ledger.hpp"

#include "babel/hash.hpp"

namespace babel {

MissingTx::MissingTx(const TxId& txid)
    : std::runtime_error("no transaction with id " + to_hex(txid)), id(txid) {}

IndexOutOfRange::IndexOutOfRange(const TxId& id, std::uint32_t index, std::size_t outputs)
    : std::runtime_error("output index " + std::to_string(index) + " out of range (tx " +
                         to_hex(id) + " has " + std::to_string(outputs) + " outputs)"),
      ref{id, index} {}

std::set<OutputRef> unspentTxOutputs(const Tx& t) {
    std::set<OutputRef> refs;
    TxId id = txId(t);
    for (std::uint32_t i = 0; i < t.outputs.size(); ++i) refs.insert({id, i});
    return refs;
}

std::set<OutputRef> unspentOutputs(const Ledger& l) {
    std::set<OutputRef> utxo;
    // Walk oldest to newest; equivalent to the newest-first recursion.
    for (auto it = l.txs.rbegin(); it != l.txs.rend(); ++it) {
        for (const auto& in : it->inputs) utxo.erase(in.outputRef);
        auto own = unspentTxOutputs(*it);
        utxo.insert(own.begin(), own.end());
    }
    return utxo;
}

const Tx& lookupTx(const Ledger& l, const TxId& id) {
    for (const auto& t : l.txs)
        if (txId(t) == id) return t;
    throw MissingTx(id);
}

const Output& getSpentOutput(const Input& i, const Ledger& l) {
    const Tx& t = lookupTx(l, i.outputRef.id);
    if (i.outputRef.index >= t.outputs.size())
        throw IndexOutOfRange(i.outputRef.id, i.outputRef.index, t.outputs.size());
    return t.outputs[i.outputRef.index];
}

}  // namespace babel
