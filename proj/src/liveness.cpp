#include "babel/liveness.hpp"

#include <random>

#include "babel/hash.hpp"
#include "babel/validation.hpp"

namespace babel {

namespace {

PubKey derivedKey(const std::string& label) {
    return sha256({reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
}

struct BuyerState {
    PubKey key{};
    Address addr{};
    OutputRef funds{};
};

}  // namespace

void SimConfig::validate() const {
    if (m <= 0 || t < 0 || t >= m) throw InvalidConfig("need 0 <= t < m");
    if (Rational(t) > (Rational(1) - delta) * Rational(m - t))
        throw InvalidConfig("honest majority violated: t/(m-t) > 1 - delta");
    if (muQ <= Rational(0) || muQ > Rational(1)) throw InvalidConfig("muQ must be in (0,1]");
    if (k < 0 || rounds < 1) throw InvalidConfig("need k >= 0 and rounds >= 1");
    if (frontRunProb.isNegative() || frontRunProb > Rational(1))
        throw InvalidConfig("frontRunProb must be in [0,1]");
}

std::int64_t livenessBound(int t, int m, const Rational& muQ) {
    if (t < 0 || t >= m) throw InvalidConfig("need 0 <= t < m");
    if (muQ <= Rational(0) || muQ > Rational(1)) throw InvalidConfig("muQ must be in (0,1]");
    std::int64_t s = (muQ.reciprocal() * Rational(t) / Rational(m - t)).ceil();
    return std::max<std::int64_t>(s, 1);
}

SimResult simulate(const SimConfig& cfg, const std::vector<BabelOffer>& offers,
                   const ExchangeRateTable& rates) {
    cfg.validate();

    // Primary currency under the PrimaryCurrency policy; pair production of it
    // is what babel outputs rely on.
    PolicyScript primaryPolicy = PolicyScript::primaryCurrency();
    AssetId primary{scriptAddr(primaryPolicy), "C"};
    Address feeAddr = derivedKey("fee-sink");

    // Genesis funds: one primary output per buyer, one token output per offer.
    std::int64_t perBuyerFunds = 10;
    for (const auto& offer : offers) perBuyerFunds += -offer.liability + 1;

    Tx genesis;
    std::vector<BuyerState> buyers(static_cast<std::size_t>(cfg.m));
    for (int b = 0; b < cfg.m; ++b) {
        buyers[b].key = derivedKey("buyer-" + std::to_string(b));
        buyers[b].addr = keyAddr(buyers[b].key);
        genesis.outputs.push_back(
            Output{buyers[b].addr, Quantities::single(primary, perBuyerFunds)});
    }
    std::vector<PubKey> sellerKeys;
    for (std::size_t i = 0; i < offers.size(); ++i) {
        sellerKeys.push_back(derivedKey("seller-" + std::to_string(i)));
        Quantities tokens;
        for (const auto& [asset, amount] : offers[i].tokens) tokens.set(asset, amount);
        genesis.outputs.push_back(Output{keyAddr(sellerKeys[i]), tokens});
    }
    for (const auto& o : genesis.outputs) genesis.forge += o.value;
    genesis.normalize();

    Ledger ledger;
    {
        auto applied = applyBatch(ledger, Batch{{genesis}}, Tick{0});
        ledger = std::get<Ledger>(applied);
    }
    TxId genesisId = txId(genesis);
    for (int b = 0; b < cfg.m; ++b)
        buyers[b].funds = OutputRef{genesisId, static_cast<std::uint32_t>(b)};

    // One offer transaction each: the babel output plus a fee output funded by
    // the liability's surplus.
    std::vector<Tx> offerTxs;
    for (std::size_t i = 0; i < offers.size(); ++i) {
        Quantities babelValue;
        for (const auto& [asset, amount] : offers[i].tokens) babelValue.set(asset, amount);
        babelValue.set(primary, offers[i].liability);
        Tx t;
        t.inputs = {Input{OutputRef{genesisId, static_cast<std::uint32_t>(cfg.m + i)},
                          sellerKeys[i]}};
        t.outputs = {Output{kOpenAddress, babelValue},
                     Output{feeAddr, Quantities::single(primary, -offers[i].liability)}};
        t.scripts = {primaryPolicy};
        t.normalize();
        signTx(t, {sellerKeys[i]});
        offerTxs.push_back(std::move(t));
    }

    SimResult result;
    result.perOffer.resize(offers.size());
    for (std::size_t i = 0; i < offers.size(); ++i) result.perOffer[i].offerId = static_cast<int>(i);

    std::mt19937_64 rng(cfg.seed);
    auto chance = [&](const Rational& p) {
        // Deterministic across platforms: compare a scaled integer draw.
        std::uint64_t draw = rng() % 1000000;
        return Rational(static_cast<std::int64_t>(draw), 1000000) < p;
    };

    std::int64_t honestBlocks = 0;
    for (int round = 1; round <= cfg.rounds; ++round) {
        int issuer = static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.m));
        bool adversarial = issuer < cfg.t;
        if (!adversarial) ++honestBlocks;
        if (adversarial) continue;  // censors every pending offer

        auto ratesIt = rates.perBuyer.find(std::to_string(issuer));
        if (ratesIt == rates.perBuyer.end()) continue;

        for (std::size_t i = 0; i < offers.size(); ++i) {
            OfferOutcome& outcome = result.perOffer[i];
            if (outcome.includedRound) continue;
            if (!isAttractive(offers[i], ratesIt->second)) continue;

            Batch batch;
            try {
                batch = buildFeeBatch(ledger, offerTxs[i], 0, buyers[issuer].funds,
                                      buyers[issuer].key, buyers[issuer].addr, 1, feeAddr);
            } catch (const InsufficientFunds&) {
                continue;  // this buyer's reserve ran dry
            }
            auto applied = applyBatch(ledger, batch, Tick{static_cast<std::uint64_t>(round)});
            if (!std::holds_alternative<Ledger>(applied)) continue;
            ledger = std::get<Ledger>(std::move(applied));

            // Track the buyer's change output as the new funds source.
            const Tx& feeTx = batch.txs.back();
            TxId feeTxId = txId(feeTx);
            for (std::uint32_t idx = 0; idx < feeTx.outputs.size(); ++idx) {
                const Output& o = feeTx.outputs[idx];
                if (o.addr == buyers[issuer].addr && o.value(primary) > 0)
                    buyers[issuer].funds = OutputRef{feeTxId, idx};
            }

            outcome.includedRound = static_cast<std::uint64_t>(round);
            outcome.settledRound = outcome.includedRound.value() + cfg.k;
            outcome.includedBy = chance(cfg.frontRunProb) ? IncludedBy::FrontRun
                                                          : IncludedBy::Honest;
        }
    }

    result.empiricalChainQuality = Rational(honestBlocks, cfg.rounds);
    result.empiricalGrowth = Rational(1);
    return result;
}

}  // namespace babel
