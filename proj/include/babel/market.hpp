#pragma once

#include <map>
#include <string>

#include "babel/rational.hpp"
#include "babel/selection.hpp"
#include "babel/tx.hpp"

namespace babel {

struct InvalidAmount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoRates : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnpricedToken : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientFunds : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotABabelOutput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Market view of a liability-bearing output: custom tokens offered against a
// primary-currency liability. Single-token offers are the common case; the
// token list supports offers bundling several assets.
struct BabelOffer {
    TxId txId{};
    std::vector<std::pair<AssetId, std::int64_t>> tokens;  // amounts > 0
    std::int64_t liability = 0;                            // < 0, primary units
};

using BuyerId = std::string;

// A buyer's published exchange rate list; an infinite rate means the buyer
// does not accept the token.
struct ExchangeRateTable {
    std::map<BuyerId, std::vector<std::pair<AssetId, Rational>>> perBuyer;
};

struct NominalValueTable {
    std::map<AssetId, Rational> perToken;  // primary units per token, >= 0
};

// o_babel = {C -> -x, T -> y} at the open address.
Output makeBabelOutput(std::int64_t x, const AssetId& token, std::int64_t y,
                       const AssetId& primary);

// Open-address output with value give - want; give/want nonzero, nonnegative,
// disjoint support.
Output makeSwapOutput(const Quantities& give, const Quantities& want);

// Nearest-rank percentile over all finite rates published for the token:
// sorted ascending r_1..r_N, returns r_ceil(P*N/100).
Rational percentile(int p, const AssetId& token, const ExchangeRateTable& bl);

// Smallest integral amount satisfying amount >= |liability| * percentile(P).
std::int64_t minAttractiveAmount(std::int64_t liability, int p, const AssetId& token,
                                 const ExchangeRateTable& bl);

// A buyer accepts when the offered tokens, converted at the buyer's rates,
// cover the liability. Tokens without a finite listed rate contribute nothing.
bool isAttractive(const BabelOffer& offer,
                  const std::vector<std::pair<AssetId, Rational>>& rates);

// Offer-to-candidate valuation: Value = floor(sum (amount * nominal)^2 / |liability|).
CandidateTransaction batchVal(const BabelOffer& offer, const NominalValueTable& nominal,
                              int id, std::int64_t size);

// nominalVal for a token quoted at token:primary = r is 1/r.
Rational nominalFromRatio(const Rational& tokenPerPrimary);

// Assembles [offerTx, t_fee] where t_fee consumes the babel output and the
// counterparty's funds, pays the offered tokens to counterpartyAddr, the fee
// to feeAddr, and returns change. The batch passes applyBatch on `funding`.
Batch buildFeeBatch(const Ledger& funding, const Tx& offerTx, std::uint32_t babelOutputIndex,
                    const OutputRef& counterpartyFunds, const PubKey& counterpartyKey,
                    const Address& counterpartyAddr, std::int64_t fee, const Address& feeAddr);

}  // namespace babel
