#include "test_main.hpp"

#include "babel/market.hpp"
#include "babel/validation.hpp"

using namespace babel;
using babel::testing::asset;
using babel::testing::digestOf;

namespace {

// Six buyers, one rate each for T: 1.63, 1.38, 3.00, 1.78, 2.00, 1.81.
ExchangeRateTable sampleRates(const AssetId& t) {
    ExchangeRateTable bl;
    const std::vector<Rational> rates = {Rational(163, 100), Rational(138, 100), Rational(3),
                                         Rational(178, 100), Rational(2),        Rational(181, 100)};
    for (std::size_t i = 0; i < rates.size(); ++i)
        bl.perBuyer[std::to_string(i)] = {{t, rates[i]}};
    return bl;
}

}  // namespace

TEST_CASE("babel and swap output constructors") {
    AssetId c = asset("C"), t = asset("T");
    Output o = makeBabelOutput(16, t, 32, c);
    CHECK(o.addr == kOpenAddress);
    CHECK(o.value(c) == -16);
    CHECK(o.value(t) == 32);
    CHECK_THROWS_AS(makeBabelOutput(0, t, 32, c), InvalidAmount);
    CHECK_THROWS_AS(makeBabelOutput(16, t, -1, c), InvalidAmount);
    CHECK_THROWS_AS(makeBabelOutput(16, c, 32, c), InvalidAmount);

    Output swap = makeSwapOutput(Quantities::single(t, 10), Quantities::single(c, 5));
    CHECK(swap.value(t) == 10);
    CHECK(swap.value(c) == -5);
    CHECK_THROWS_AS(makeSwapOutput({}, Quantities::single(c, 5)), InvalidAmount);
    CHECK_THROWS_AS(makeSwapOutput(Quantities::single(t, 10), Quantities::single(t, 5)),
                    InvalidAmount);
}

TEST_CASE("percentile uses the nearest-rank rule") {
    AssetId t = asset("T");
    ExchangeRateTable bl = sampleRates(t);
    CHECK(percentile(70, t, bl) == Rational(2));
    CHECK(percentile(1, t, bl) == Rational(138, 100));
    CHECK(percentile(100, t, bl) == Rational(3));
    CHECK(percentile(50, t, bl) == Rational(178, 100));

    // Infinite rates are excluded from the pool entirely.
    bl.perBuyer["6"] = {{t, Rational::infinity()}};
    CHECK(percentile(70, t, bl) == Rational(2));
    CHECK(percentile(100, t, bl) == Rational(3));

    CHECK_THROWS_AS(percentile(0, t, bl), std::invalid_argument);
    CHECK_THROWS_AS(percentile(101, t, bl), std::invalid_argument);
    CHECK_THROWS_AS(percentile(50, asset("unlisted"), bl), NoRates);
}

TEST_CASE("minAttractiveAmount rounds the coverage target up") {
    AssetId t = asset("T");
    ExchangeRateTable bl = sampleRates(t);
    CHECK(minAttractiveAmount(-16, 70, t, bl) == 32);
    CHECK(minAttractiveAmount(-16, 50, t, bl) == 29);  // ceil(16 * 1.78)
    CHECK(minAttractiveAmount(-1, 70, t, bl) == 2);
    CHECK_THROWS_AS(minAttractiveAmount(16, 70, t, bl), std::invalid_argument);
}

TEST_CASE("isAttractive covers the liability at the buyer's own rates") {
    AssetId t = asset("T");
    BabelOffer offer{digestOf("offer"), {{t, 32}}, -16};
    CHECK(isAttractive(offer, {{t, Rational(2)}}));
    CHECK(isAttractive(offer, {{t, Rational(138, 100)}}));
    CHECK_FALSE(isAttractive(offer, {{t, Rational(3)}}));       // needs 48
    CHECK_FALSE(isAttractive(offer, {{t, Rational::infinity()}}));
    CHECK_FALSE(isAttractive(offer, {}));  // unlisted token contributes nothing
}

TEST_CASE("coverage soundness: the percentile amount attracts at least P% of buyers") {
    std::mt19937_64 rng(41);
    AssetId t = asset("T");
    for (int iter = 0; iter < 200; ++iter) {
        ExchangeRateTable bl;
        int n = 1 + static_cast<int>(rng() % 12);
        for (int b = 0; b < n; ++b)
            bl.perBuyer[std::to_string(b)] = {
                {t, Rational(1 + static_cast<std::int64_t>(rng() % 400), 100)}};
        int p = 1 + static_cast<int>(rng() % 100);
        std::int64_t liab = -(1 + static_cast<std::int64_t>(rng() % 50));
        std::int64_t amount = minAttractiveAmount(liab, p, t, bl);
        BabelOffer offer{digestOf("o"), {{t, amount}}, liab};
        int attracted = 0;
        for (const auto& [buyer, rates] : bl.perBuyer) {
            (void)buyer;
            if (isAttractive(offer, rates)) ++attracted;
        }
        // Exact statement: attracted/n >= ceil(p*n/100)/n.
        std::int64_t rank = (Rational(p) * Rational(n) / Rational(100)).ceil();
        CHECK(attracted >= rank);
    }
}

TEST_CASE("batchVal on the worked offer") {
    AssetId t = asset("T");
    NominalValueTable nominal;
    nominal.perToken[t] = nominalFromRatio(Rational(2));  // 2 T per unit -> 1/2 each
    BabelOffer offer{digestOf("offer"), {{t, 32}}, -16};
    CandidateTransaction cand = batchVal(offer, nominal, 7, 100);
    CHECK(cand.id == 7);
    CHECK(cand.initialValue == 16);  // floor((32 * 1/2)^2 / 16)
    CHECK(cand.liabilityCost == 16);
    CHECK(cand.size == 100);

    // Flooring: amount 3 at nominal 1/2 against liability 2 -> floor(2.25/2)=1.
    BabelOffer small{digestOf("s"), {{t, 3}}, -2};
    CHECK(batchVal(small, nominal, 0, 1).initialValue == 1);

    CHECK_THROWS_AS(batchVal(BabelOffer{digestOf("x"), {{asset("U"), 5}}, -2}, nominal, 0, 1),
                    UnpricedToken);
}

TEST_CASE("batchVal grows superlinearly in the offered amount") {
    AssetId t = asset("T");
    NominalValueTable nominal;
    nominal.perToken[t] = Rational(1);
    std::int64_t prev = -1;
    for (std::int64_t amount = 4; amount <= 64; amount *= 2) {
        BabelOffer offer{digestOf("o"), {{t, amount}}, -4};
        std::int64_t v = batchVal(offer, nominal, 0, 1).initialValue;
        CHECK(v > prev);
        CHECK(v == amount * amount / 4);
        prev = v;
    }
}

TEST_CASE("nominalFromRatio is the reciprocal") {
    CHECK(nominalFromRatio(Rational(2)) == Rational(1, 2));
    CHECK(nominalFromRatio(Rational(1, 4)) == Rational(4));
    CHECK_THROWS_AS(nominalFromRatio(Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(nominalFromRatio(Rational::infinity()), std::invalid_argument);
}

TEST_CASE("buildFeeBatch settles an offer end to end") {
    PolicyScript primaryPolicy = PolicyScript::primaryCurrency();
    AssetId primary{scriptAddr(primaryPolicy), "C"};
    AssetId token = asset("T");
    PubKey sellerKey = digestOf("seller"), buyerKey = digestOf("buyer");
    Address feeAddr = digestOf("fee-sink");

    Tx genesis;
    genesis.outputs = {Output{keyAddr(sellerKey), Quantities::single(token, 32)},
                       Output{keyAddr(buyerKey), Quantities::single(primary, 25)}};
    for (const auto& o : genesis.outputs) genesis.forge += o.value;
    genesis.normalize();
    Ledger funding = std::get<Ledger>(applyBatch(Ledger{}, Batch{{genesis}}, Tick{0}));

    Tx offerTx;
    offerTx.inputs = {Input{OutputRef{txId(genesis), 0}, sellerKey}};
    offerTx.outputs = {makeBabelOutput(16, token, 32, primary),
                       Output{feeAddr, Quantities::single(primary, 16)}};
    offerTx.scripts = {primaryPolicy};
    offerTx.normalize();
    signTx(offerTx, {sellerKey});

    Batch batch = buildFeeBatch(funding, offerTx, 0, OutputRef{txId(genesis), 1}, buyerKey,
                                keyAddr(buyerKey), 2, feeAddr);
    REQUIRE(batch.txs.size() == 2);
    auto applied = applyBatch(funding, batch, Tick{1});
    REQUIRE(std::holds_alternative<Ledger>(applied));

    // Buyer ends with the tokens and 25 - 16 - 2 = 7 change.
    const Ledger& after = std::get<Ledger>(applied);
    Quantities buyerTotal;
    for (const auto& ref : unspentOutputs(after)) {
        const Output& o = lookupTx(after, ref.id).outputs[ref.index];
        if (o.addr == keyAddr(buyerKey)) buyerTotal += o.value;
    }
    CHECK(buyerTotal(token) == 32);
    CHECK(buyerTotal(primary) == 7);

    CHECK_THROWS_AS(buildFeeBatch(funding, offerTx, 0, OutputRef{txId(genesis), 1}, buyerKey,
                                  keyAddr(buyerKey), 10, feeAddr),
                    InsufficientFunds);
    CHECK_THROWS_AS(buildFeeBatch(funding, offerTx, 1, OutputRef{txId(genesis), 1}, buyerKey,
                                  keyAddr(buyerKey), 2, feeAddr),
                    NotABabelOutput);
    CHECK_THROWS_AS(buildFeeBatch(funding, offerTx, 5, OutputRef{txId(genesis), 1}, buyerKey,
                                  keyAddr(buyerKey), 2, feeAddr),
                    NotABabelOutput);
}
