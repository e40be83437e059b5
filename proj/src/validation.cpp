#include "babel/validation.hpp"

#include <algorithm>

#include "babel/hash.hpp"

namespace babel {

namespace {

bool isOpenSpend(const Input& in, const Output& spent) {
    return in.key == kOpenKey && spent.addr == kOpenAddress;
}

// Per-output positive/negative parts, then summed, for a list of outputs.
Quantities sumPositiveParts(const std::vector<Output>& outputs) {
    Quantities sum;
    for (const auto& o : outputs) sum += o.value.positivePart();
    return sum;
}

Quantities sumNegativeParts(const std::vector<Output>& outputs) {
    Quantities sum;
    for (const auto& o : outputs) sum += o.value.negativePart();
    return sum;
}

std::vector<Output> resolveSpentOutputs(const Tx& t, const Ledger& l) {
    std::vector<Output> spent;
    spent.reserve(t.inputs.size());
    for (const auto& in : t.inputs) spent.push_back(getSpentOutput(in, l));
    return spent;
}

}  // namespace

std::set<PolicyId> policiesWithChange(const Quantities& v1, const Quantities& v2) {
    std::set<PolicyId> pids;
    Quantities diff = v1 - v2;
    for (const auto& [asset, q] : diff.entries()) {
        (void)q;
        pids.insert(asset.pid);
    }
    return pids;
}

std::set<PolicyId> changedSupply(const Tx& t, const Ledger& l) {
    std::vector<Output> spent = resolveSpentOutputs(t, l);
    auto changed = policiesWithChange(sumPositiveParts(spent), sumPositiveParts(t.outputs));
    auto negChanged = policiesWithChange(sumNegativeParts(spent), sumNegativeParts(t.outputs));
    changed.insert(negChanged.begin(), negChanged.end());
    return changed;
}

bool runScript(const PolicyScript& s, const ScriptContext& ctx) {
    switch (s.kind) {
        case PolicyScript::Kind::AlwaysTrue:
            return true;
        case PolicyScript::Kind::AlwaysFalse:
            return false;
        case PolicyScript::Kind::SignedBy: {
            TxId id = txId(ctx.tx);
            return std::any_of(ctx.tx.sigs.begin(), ctx.tx.sigs.end(),
                               [&](const Signature& sig) { return verify(s.key, sig, id); });
        }
        case PolicyScript::Kind::ForbidPairProduction: {
            if (!runScript(*s.inner, ctx)) return false;
            // For every asset under this policy, the increase in positive-part
            // supply must be exactly the forge amount; pair production would
            // inflate the positive part without a matching forge entry.
            Quantities inPos = sumPositiveParts(ctx.spentOutputs);
            Quantities outPos = sumPositiveParts(ctx.tx.outputs);
            Quantities delta = outPos - inPos;
            std::set<AssetId> assets;
            for (const auto& [a, q] : delta.entries()) if (a.pid == ctx.self) assets.insert(a);
            for (const auto& [a, q] : ctx.tx.forge.entries()) if (a.pid == ctx.self) assets.insert(a);
            for (const auto& a : assets)
                if (delta(a) != ctx.tx.forge(a)) return false;
            return true;
        }
        case PolicyScript::Kind::PrimaryCurrency: {
            // Minting is confined to genesis; pair production is always fine
            // (it never touches the forge field).
            if (ctx.ledgerEmpty) return true;
            for (const auto& [a, q] : ctx.tx.forge.entries()) {
                (void)q;
                if (a.pid == ctx.self) return false;
            }
            return true;
        }
    }
    return false;
}

ValidationReport checkConditionalValidity(const Tx& t, const Ledger& l, Tick currentTick) {
    ValidationReport rep;
    auto fail = [&](int rule, std::string why) { rep.perRule[rule] = {false, std::move(why)}; };
    auto pass = [&](int rule) { rep.perRule[rule] = {true, {}}; };

    // (1) current tick within the validity interval
    if (t.validityInterval.contains(currentTick))
        pass(kRuleTickInInterval);
    else
        fail(kRuleTickInInterval, "tick " + std::to_string(currentTick.value) + " outside interval");

    // (3) all inputs refer to unspent outputs
    std::set<OutputRef> utxo = unspentOutputs(l);
    bool resolvable = true;
    for (const auto& in : t.inputs) {
        if (!utxo.contains(in.outputRef)) {
            resolvable = false;
            fail(kRuleInputsUnspent, "input " + to_hex(in.outputRef.id) + ":" +
                                         std::to_string(in.outputRef.index) + " is not unspent");
            break;
        }
    }
    if (resolvable) pass(kRuleInputsUnspent);

    // (5) no output locally double spent (inputs are sorted)
    bool doubleSpend = false;
    for (std::size_t i = 1; i < t.inputs.size(); ++i)
        if (t.inputs[i].outputRef == t.inputs[i - 1].outputRef) doubleSpend = true;
    if (doubleSpend)
        fail(kRuleNoLocalDoubleSpend, "two inputs spend the same output reference");
    else
        pass(kRuleNoLocalDoubleSpend);

    // (6) all inputs validate; open-key inputs carry no signature
    {
        TxId id = txId(t);
        bool ok = true;
        for (const auto& in : t.inputs) {
            if (in.key == kOpenKey) continue;
            bool signedByKey =
                std::any_of(t.sigs.begin(), t.sigs.end(),
                            [&](const Signature& sig) { return verify(in.key, sig, id); });
            if (!signedByKey) {
                ok = false;
                fail(kRuleInputsValidate, "no signature for input key " + to_hex(in.key));
                break;
            }
        }
        if (ok) pass(kRuleInputsValidate);
    }

    if (!resolvable) {
        // Rules that need resolved inputs are reported as failed dependencies.
        for (int rule : {kRuleValuePreserved, kRuleKeysMatchAddresses, kRuleForging,
                         kRuleScriptsValidate})
            fail(rule, "not evaluated: rule 3 failed");
        rep.overall = false;
        return rep;
    }

    std::vector<Output> spent = resolveSpentOutputs(t, l);

    // (4) value is preserved: forge + sum(spent) == sum(outputs)
    {
        Quantities lhs = t.forge;
        for (const auto& o : spent) lhs += o.value;
        Quantities rhs;
        for (const auto& o : t.outputs) rhs += o.value;
        if (lhs == rhs)
            pass(kRuleValuePreserved);
        else
            fail(kRuleValuePreserved, "forge + inputs != outputs");
    }

    // (7) keys match spent output addresses; the open key pairs with the open address
    {
        bool ok = true;
        for (std::size_t i = 0; i < t.inputs.size(); ++i) {
            const Input& in = t.inputs[i];
            if (isOpenSpend(in, spent[i])) continue;
            if (keyAddr(in.key) != spent[i].addr) {
                ok = false;
                fail(kRuleKeysMatchAddresses,
                     "key " + to_hex(in.key) + " does not match output address");
                break;
            }
        }
        if (ok) pass(kRuleKeysMatchAddresses);
    }

    // (8) forging: supply changes need their policy scripts, except at genesis
    std::set<PolicyId> changed = changedSupply(t, l);
    {
        bool ok = true;
        if (!changed.empty() && !l.empty()) {
            for (const auto& pid : changed) {
                bool found = std::any_of(t.scripts.begin(), t.scripts.end(),
                                         [&](const PolicyScript& s) { return scriptAddr(s) == pid; });
                if (!found) {
                    ok = false;
                    fail(kRuleForging, "no policy script for changed supply of " + to_hex(pid));
                    break;
                }
            }
        }
        if (ok) pass(kRuleForging);
    }

    // (9) all scripts validate
    {
        bool ok = true;
        for (const auto& s : t.scripts) {
            ScriptContext ctx{scriptAddr(s), t, spent, l.empty()};
            if (!runScript(s, ctx)) {
                ok = false;
                fail(kRuleScriptsValidate, "script " + to_hex(scriptAddr(s)) + " rejected");
                break;
            }
        }
        if (ok) pass(kRuleScriptsValidate);
    }

    rep.overall = std::all_of(rep.perRule.begin(), rep.perRule.end(),
                              [](const auto& kv) { return kv.second.passed; });
    return rep;
}

bool isConditionallyValidLedger(const Ledger& l, const std::vector<Tick>& ticks) {
    if (ticks.size() != l.txs.size())
        throw LengthMismatch("tick list length does not match ledger length");
    // Validate oldest first, each against its suffix ledger.
    Ledger prefix;
    for (std::size_t i = l.txs.size(); i-- > 0;) {
        if (!checkConditionalValidity(l.txs[i], prefix, ticks[i]).overall) return false;
        prefix.txs.insert(prefix.txs.begin(), l.txs[i]);
    }
    return true;
}

bool isFullyValidLedger(const Ledger& l, const std::vector<Tick>& ticks) {
    if (!isConditionallyValidLedger(l, ticks)) return false;
    for (const auto& ref : unspentOutputs(l)) {
        const Tx& t = lookupTx(l, ref.id);
        if (!t.outputs[ref.index].value.geqZero()) return false;
    }
    return true;
}

std::variant<Ledger, BatchError> applyBatch(const Ledger& l, const Batch& b, Tick currentTick) {
    if (b.txs.empty()) throw std::invalid_argument("empty batch");
    Ledger extended = l;
    for (std::size_t i = 0; i < b.txs.size(); ++i) {
        ValidationReport rep = checkConditionalValidity(b.txs[i], extended, currentTick);
        if (!rep.overall)
            return BatchError{BatchError::Kind::ConditionalInvalidity, i, std::move(rep), {}};
        extended.txs.insert(extended.txs.begin(), b.txs[i]);
    }
    std::set<OutputRef> offending;
    for (const auto& ref : unspentOutputs(extended)) {
        const Tx& t = lookupTx(extended, ref.id);
        if (!t.outputs[ref.index].value.geqZero()) offending.insert(ref);
    }
    if (!offending.empty())
        return BatchError{BatchError::Kind::ResidualLiability, 0, {}, std::move(offending)};
    return extended;
}

}  // namespace babel
