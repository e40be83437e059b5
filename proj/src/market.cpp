#include "babel/market.hpp"

#include <algorithm>

#include "babel/hash.hpp"
#include "babel/validation.hpp"

namespace babel {

Output makeBabelOutput(std::int64_t x, const AssetId& token, std::int64_t y,
                       const AssetId& primary) {
    if (x <= 0 || y <= 0) throw InvalidAmount("babel output amounts must be positive");
    if (token == primary) throw InvalidAmount("babel output cannot offer the primary currency");
    Quantities value;
    value.set(primary, -static_cast<Quantity>(x));
    value.set(token, static_cast<Quantity>(y));
    return Output{kOpenAddress, value};
}

Output makeSwapOutput(const Quantities& give, const Quantities& want) {
    if (give.empty() || want.empty()) throw InvalidAmount("swap sides must be nonzero");
    if (!give.geqZero() || !want.geqZero()) throw InvalidAmount("swap sides must be nonnegative");
    for (const auto& [asset, q] : give.entries()) {
        (void)q;
        if (want(asset) != 0) throw InvalidAmount("swap sides must have disjoint support");
    }
    return Output{kOpenAddress, give - want};
}

Rational percentile(int p, const AssetId& token, const ExchangeRateTable& bl) {
    if (p <= 0 || p > 100) throw std::invalid_argument("percentile must be in (0, 100]");
    std::vector<Rational> rates;
    for (const auto& [buyer, list] : bl.perBuyer) {
        (void)buyer;
        for (const auto& [asset, rate] : list)
            if (asset == token && !rate.isInfinite()) rates.push_back(rate);
    }
    if (rates.empty()) throw NoRates("no finite rates listed for token");
    std::sort(rates.begin(), rates.end());
    // Nearest rank: r_ceil(p * N / 100), 1-based.
    auto n = static_cast<std::int64_t>(rates.size());
    std::int64_t rank = (Rational(p) * Rational(n) / Rational(100)).ceil();
    return rates[static_cast<std::size_t>(rank - 1)];
}

std::int64_t minAttractiveAmount(std::int64_t liability, int p, const AssetId& token,
                                 const ExchangeRateTable& bl) {
    if (liability >= 0) throw std::invalid_argument("liability must be negative");
    return (Rational(-liability) * percentile(p, token, bl)).ceil();
}

bool isAttractive(const BabelOffer& offer,
                  const std::vector<std::pair<AssetId, Rational>>& rates) {
    Rational covered(0);
    for (const auto& [token, amount] : offer.tokens) {
        auto it = std::find_if(rates.begin(), rates.end(),
                               [&](const auto& entry) { return entry.first == token; });
        if (it == rates.end() || it->second.isInfinite()) continue;
        covered = covered + Rational(amount) / it->second;
    }
    return covered >= Rational(-offer.liability);
}

CandidateTransaction batchVal(const BabelOffer& offer, const NominalValueTable& nominal,
                              int id, std::int64_t size) {
    if (offer.liability >= 0) throw std::invalid_argument("offer liability must be negative");
    Rational total(0);
    for (const auto& [token, amount] : offer.tokens) {
        auto it = nominal.perToken.find(token);
        if (it == nominal.perToken.end()) throw UnpricedToken("no nominal value for offered token");
        Rational worth = Rational(amount) * it->second;
        total = total + worth * worth;
    }
    std::int64_t value = (total / Rational(-offer.liability)).floor();
    return CandidateTransaction{id, value, -offer.liability, size};
}

Rational nominalFromRatio(const Rational& tokenPerPrimary) {
    if (tokenPerPrimary.isInfinite() || tokenPerPrimary.isZero() || tokenPerPrimary.isNegative())
        throw std::invalid_argument("token:primary ratio must be positive");
    return tokenPerPrimary.reciprocal();
}

Batch buildFeeBatch(const Ledger& funding, const Tx& offerTx, std::uint32_t babelOutputIndex,
                    const OutputRef& counterpartyFunds, const PubKey& counterpartyKey,
                    const Address& counterpartyAddr, std::int64_t fee, const Address& feeAddr) {
    if (babelOutputIndex >= offerTx.outputs.size())
        throw NotABabelOutput("babel output index out of range");
    const Output& babel = offerTx.outputs[babelOutputIndex];
    if (babel.addr != kOpenAddress) throw NotABabelOutput("babel output must be open-address");
    Quantities liability = babel.value.negativePart();
    Quantities tokens = babel.value.positivePart();
    if (liability.supportSize() != 1 || tokens.empty())
        throw NotABabelOutput("expected one liability entry plus offered tokens");
    const AssetId& primary = liability.entries().begin()->first;
    Quantity x = -liability.entries().begin()->second;

    const Output& funds = getSpentOutput(Input{counterpartyFunds, counterpartyKey}, funding);
    Quantity available = funds.value(primary);
    if (available < x + fee) throw InsufficientFunds("counterparty funds do not cover x + fee");

    Tx feeTx;
    feeTx.inputs = {Input{OutputRef{txId(offerTx), babelOutputIndex}, kOpenKey},
                    Input{counterpartyFunds, counterpartyKey}};
    feeTx.outputs.push_back(Output{counterpartyAddr, tokens});
    if (fee > 0) feeTx.outputs.push_back(Output{feeAddr, Quantities::single(primary, fee)});
    Quantities change = funds.value - Quantities::single(primary, x + fee);
    if (!change.empty()) feeTx.outputs.push_back(Output{counterpartyAddr, change});
    // Consuming the liability changes the primary supply, so t_fee must carry
    // the primary currency's policy; reuse the copy the offer ships with.
    for (const auto& s : offerTx.scripts)
        if (scriptAddr(s) == primary.pid) feeTx.scripts.push_back(s);
    feeTx.normalize();
    signTx(feeTx, {counterpartyKey});

    return Batch{{offerTx, feeTx}};
}

}  // namespace babel
