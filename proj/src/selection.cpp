#include "babel/selection.hpp"

#include <algorithm>

namespace babel {

namespace {

// Descending v/s, ties by smaller size, then smaller id. `value` lets the
// FPTAS sort by scaled initial values.
std::vector<CandidateTransaction> sortCandidates(
    const std::vector<CandidateTransaction>& mempool,
    const std::function<std::int64_t(const CandidateTransaction&)>& value) {
    std::vector<CandidateTransaction> sorted = mempool;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const CandidateTransaction& a, const CandidateTransaction& b) {
                         __int128 lhs = static_cast<__int128>(value(a)) * b.size;
                         __int128 rhs = static_cast<__int128>(value(b)) * a.size;
                         if (lhs != rhs) return lhs > rhs;
                         if (a.size != b.size) return a.size < b.size;
                         return a.id < b.id;
                     });
    return sorted;
}

using ValueFn = std::function<std::int64_t(std::size_t, const std::set<int>&)>;

// Plain Algorithm-1 table for prefix-independent values; valueAt is called
// with an empty prefix.
DpTable buildDp(std::vector<CandidateTransaction> sorted, std::int64_t blockSize,
                std::int64_t reserve, const ValueFn& valueAt) {
    DpTable u;
    u.sorted = std::move(sorted);
    const std::size_t n = u.sorted.size();
    u.lists.reserve(n);
    u.values.reserve(n);
    for (std::size_t j = 0; j < n; ++j) u.values.push_back(valueAt(j, {}));

    std::vector<DpTuple> first;
    first.push_back({0, 0, reserve, false});
    if (u.sorted[0].size <= blockSize && reserve - u.sorted[0].liabilityCost >= 0)
        first.push_back({u.sorted[0].size, u.values[0],
                         reserve - u.sorted[0].liabilityCost, true});
    u.lists.push_back(pruneDominated(std::move(first)));
    u.maxFrontier = u.lists.back().size();

    for (std::size_t j = 1; j < n; ++j) {
        const auto& prev = u.lists[j - 1];
        std::vector<DpTuple> next;
        next.reserve(2 * prev.size());
        for (const DpTuple& t : prev) next.push_back({t.space, t.value, t.residual, false});
        for (const DpTuple& t : prev) {
            std::int64_t space = t.space + u.sorted[j].size;
            std::int64_t residual = t.residual - u.sorted[j].liabilityCost;
            if (space > blockSize || residual < 0) continue;
            next.push_back({space, t.value + u.values[j], residual, true});
        }
        u.lists.push_back(pruneDominated(std::move(next)));
        u.maxFrontier = std::max(u.maxFrontier, u.lists.back().size());
    }
    return u;
}

// Prefix-dependent values break plain value domination: a lower-valued tuple
// whose prefix holds fewer same-token picks can still win later. Carrying the
// per-token counts and pruning only against pointwise-smaller profiles keeps
// the DP exact (dominator extensions are never worth less).
struct DecayState {
    std::int64_t space = 0;
    std::int64_t value = 0;
    std::int64_t residual = 0;
    std::set<int> ids;
    std::map<AssetId, int> profile;
};

bool profileLeq(const std::map<AssetId, int>& a, const std::map<AssetId, int>& b) {
    for (const auto& [token, count] : a) {
        auto it = b.find(token);
        if (it == b.end() || count > it->second) return false;
    }
    return true;
}

std::vector<DecayState> pruneDecay(std::vector<DecayState> states, std::size_t& maxFrontier) {
    std::sort(states.begin(), states.end(), [](const DecayState& a, const DecayState& b) {
        if (a.space != b.space) return a.space < b.space;
        return a.value > b.value;
    });
    std::vector<DecayState> kept;
    for (const DecayState& s : states) {
        bool dominated = std::any_of(kept.begin(), kept.end(), [&](const DecayState& k) {
            return k.space <= s.space && k.value >= s.value && k.residual >= s.residual &&
                   profileLeq(k.profile, s.profile);
        });
        if (!dominated) kept.push_back(s);
    }
    maxFrontier = std::max(maxFrontier, kept.size());
    return kept;
}

SelectionResult selectDecay(const SelectionInstance& inst, const ValueModel& model,
                            const std::function<std::int64_t(std::int64_t)>& measure) {
    auto sorted = sortCandidates(inst.mempool, [&](const CandidateTransaction& tx) {
        return measure(tx.initialValue);
    });
    std::size_t maxFrontier = 0;
    std::vector<DecayState> states = {{0, 0, inst.reserve, {}, {}}};
    for (const auto& tx : sorted) {
        std::vector<DecayState> next = states;
        for (const DecayState& s : states) {
            std::int64_t space = s.space + tx.size;
            std::int64_t residual = s.residual - tx.liabilityCost;
            if (space > inst.blockSize || residual < 0) continue;
            DecayState ext = s;
            ext.space = space;
            ext.residual = residual;
            ext.value += measure(candidateValue(tx, s.ids, model));
            ext.ids.insert(tx.id);
            auto token = model.tokenOf.find(tx.id);
            if (token != model.tokenOf.end()) ++ext.profile[token->second];
            next.push_back(std::move(ext));
        }
        states = pruneDecay(std::move(next), maxFrontier);
    }
    const DecayState* best = &states.front();
    for (const DecayState& s : states)
        if (s.value > best->value) best = &s;
    SelectionResult res;
    for (const auto& tx : sorted)
        if (best->ids.contains(tx.id)) res.block.push_back(tx.id);
    res.utility = best->value;
    res.residual = best->residual;
    res.maxFrontier = maxFrontier;
    return res;
}

SelectionResult resultFromTable(const DpTable& u) {
    const DpTuple* best = &u.lists.back().front();
    for (const DpTuple& t : u.lists.back())
        if (t.value > best->value || (t.value == best->value && t.residual > best->residual))
            best = &t;
    std::set<int> ids = getBlock(u, u.lists.size(), best->space);
    SelectionResult res;
    for (const auto& tx : u.sorted)
        if (ids.contains(tx.id)) res.block.push_back(tx.id);
    res.utility = best->value;
    res.residual = best->residual;
    res.maxFrontier = u.maxFrontier;
    return res;
}

}  // namespace

std::int64_t candidateValue(const CandidateTransaction& tx, const std::set<int>& prefixBlock,
                            const ValueModel& model) {
    if (model.mode == ValueModel::Mode::Constant) return tx.initialValue;
    auto self = model.tokenOf.find(tx.id);
    int sameToken = 0;
    if (self != model.tokenOf.end()) {
        for (int id : prefixBlock) {
            auto other = model.tokenOf.find(id);
            if (other != model.tokenOf.end() && other->second == self->second) ++sameToken;
        }
    }
    Rational factor = Rational(1) - model.alpha * Rational(sameToken);
    if (factor.isNegative()) return 0;
    return (Rational(tx.initialValue) * factor).floor();
}

std::vector<DpTuple> pruneDominated(std::vector<DpTuple> tuples) {
    // The liability reserve is a second knapsack constraint, so domination on
    // (space, value) alone would discard tuples whose extra residual pays off
    // later; the residual joins the Pareto order. With cost-free candidates
    // (every residual equal) this reduces to the plain space/value staircase.
    std::sort(tuples.begin(), tuples.end(), [](const DpTuple& a, const DpTuple& b) {
        if (a.space != b.space) return a.space < b.space;
        if (a.value != b.value) return a.value > b.value;
        if (a.residual != b.residual) return a.residual > b.residual;
        return a.participation < b.participation;
    });
    std::vector<DpTuple> kept;
    for (const DpTuple& t : tuples) {
        bool dominated = std::any_of(kept.begin(), kept.end(), [&](const DpTuple& k) {
            return k.space <= t.space && k.value >= t.value && k.residual >= t.residual;
        });
        if (!dominated) kept.push_back(t);
    }
    return kept;
}

std::set<int> getBlock(const DpTable& u, std::size_t j, std::int64_t targetSpace) {
    if (j == 0 || j > u.lists.size()) throw TupleNotFound("level out of range");
    // Among tuples with the target space, take the best (value, residual).
    const DpTuple* best = nullptr;
    for (const DpTuple& t : u.lists[j - 1])
        if (t.space == targetSpace &&
            (best == nullptr || t.value > best->value ||
             (t.value == best->value && t.residual > best->residual)))
            best = &t;
    if (best == nullptr)
        throw TupleNotFound("no tuple with space " + std::to_string(targetSpace));

    // Walk downwards matching the full (space, value, residual) triple; each
    // level keeps at most one tuple per triple, and every kept tuple's
    // predecessor survives in the finalized previous list.
    std::set<int> block;
    DpTuple need = *best;
    for (std::size_t i = j; i-- > 0;) {
        const auto& list = u.lists[i];
        auto it = std::find_if(list.begin(), list.end(), [&](const DpTuple& t) {
            return t.space == need.space && t.value == need.value &&
                   t.residual == need.residual;
        });
        if (it == list.end())
            throw TupleNotFound("no tuple with space " + std::to_string(need.space));
        if (it->participation) {
            block.insert(u.sorted[i].id);
            need.space -= u.sorted[i].size;
            need.value -= u.values[i];
            need.residual += u.sorted[i].liabilityCost;
        }
    }
    return block;
}

SelectionResult remeasure(const SelectionInstance& inst, SelectionResult res) {
    auto sorted = sortCandidates(inst.mempool,
                                 [](const CandidateTransaction& tx) { return tx.initialValue; });
    res.utility = 0;
    std::set<int> prefix;
    for (const auto& tx : sorted) {
        if (std::find(res.block.begin(), res.block.end(), tx.id) == res.block.end()) continue;
        res.utility += candidateValue(tx, prefix, inst.valueModel);
        prefix.insert(tx.id);
    }
    return res;
}

SelectionResult selectOptimal(const SelectionInstance& inst) {
    if (inst.mempool.empty()) return {{}, 0, inst.reserve, 0};
    if (inst.valueModel.mode == ValueModel::Mode::TokenDecay)
        return selectDecay(inst, inst.valueModel, [](std::int64_t v) { return v; });
    auto sorted = sortCandidates(inst.mempool,
                                 [](const CandidateTransaction& tx) { return tx.initialValue; });
    ValueFn valueAt = [&](std::size_t pos, const std::set<int>& prefix) {
        return candidateValue(sorted[pos], prefix, inst.valueModel);
    };
    DpTable u = buildDp(sorted, inst.blockSize, inst.reserve, valueAt);
    return resultFromTable(u);
}

SelectionResult selectApprox(const SelectionInstance& inst, const Rational& eps) {
    if (inst.mempool.empty()) throw EmptyMempool("approximation needs a nonempty mempool");
    // The scale anchor must be attainable: a candidate that cannot fit on its
    // own may exceed the optimum, and scaling by it would void the guarantee.
    std::int64_t vmax = 0;
    for (const auto& tx : inst.mempool)
        if (tx.size <= inst.blockSize && tx.liabilityCost <= inst.reserve)
            vmax = std::max(vmax, tx.initialValue);
    Rational mu = eps * Rational(vmax) / Rational(static_cast<std::int64_t>(inst.mempool.size()));
    if (mu <= Rational(1)) mu = Rational(1);
    Rational invMu = mu.reciprocal();
    auto scaled = [&](std::int64_t v) { return (Rational(v) * invMu).floor(); };

    if (inst.valueModel.mode == ValueModel::Mode::TokenDecay)
        return remeasure(inst, selectDecay(inst, inst.valueModel, scaled));

    auto sorted = sortCandidates(inst.mempool, [&](const CandidateTransaction& tx) {
        return scaled(tx.initialValue);
    });
    ValueFn valueAt = [&](std::size_t pos, const std::set<int>& prefix) {
        return scaled(candidateValue(sorted[pos], prefix, inst.valueModel));
    };
    DpTable u = buildDp(sorted, inst.blockSize, inst.reserve, valueAt);
    return remeasure(inst, resultFromTable(u));
}

SelectionResult bruteForce(const SelectionInstance& inst) {
    const std::size_t n = inst.mempool.size();
    if (n > 20) throw TooLarge("brute force limited to 20 candidates");
    if (n == 0) return {{}, 0, inst.reserve, 0};
    auto sorted = sortCandidates(inst.mempool,
                                 [](const CandidateTransaction& tx) { return tx.initialValue; });

    SelectionResult best{{}, 0, inst.reserve, 0};
    std::vector<int> bestIds;  // ascending, for the lexicographic tie rule
    bool haveBest = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::int64_t space = 0, cost = 0, utility = 0;
        std::set<int> prefix;
        std::vector<int> block;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (!(mask & (1u << pos))) continue;
            const auto& tx = sorted[pos];
            space += tx.size;
            cost += tx.liabilityCost;
            utility += candidateValue(tx, prefix, inst.valueModel);
            prefix.insert(tx.id);
            block.push_back(tx.id);
        }
        if (space > inst.blockSize || cost > inst.reserve) continue;
        std::vector<int> ids = block;
        std::sort(ids.begin(), ids.end());
        if (!haveBest || utility > best.utility ||
            (utility == best.utility && ids < bestIds)) {
            haveBest = true;
            best.block = block;
            best.utility = utility;
            best.residual = inst.reserve - cost;
            bestIds = ids;
        }
    }
    return best;
}

}  // namespace babel
