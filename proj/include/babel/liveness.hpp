#pragma once

#include <optional>

#include "babel/market.hpp"

namespace babel {

struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Round-based spot-market simulation. Buyers are numbered 0..m-1 and keyed in
// the exchange-rate table as "0".."m-1"; the first t of them are adversarial
// and censor all pending offers when selected as issuer.
struct SimConfig {
    int m = 1;                       // buyer count
    int t = 0;                       // adversarial buyers
    Rational delta = Rational(1, 2); // honest-majority slack: t/(m-t) <= 1-delta
    Rational muQ = Rational(1);      // chain-quality proportion, in (0,1]
    int k = 0;                       // common-prefix depth
    int rounds = 1;                  // horizon
    int coverageP = 50;
    std::uint64_t seed = 0;
    Rational frontRunProb = Rational(0);

    void validate() const;
};

enum class IncludedBy { Honest, Adversarial, FrontRun };

struct OfferOutcome {
    int offerId = 0;
    std::uint64_t submittedRound = 0;
    std::optional<std::uint64_t> includedRound;
    IncludedBy includedBy = IncludedBy::Honest;
    std::optional<std::uint64_t> settledRound;  // includedRound + k
};

struct SimResult {
    std::vector<OfferOutcome> perOffer;
    Rational empiricalChainQuality = Rational(0);  // honest-block fraction
    Rational empiricalGrowth = Rational(0);        // blocks per round
};

// ceil((1/muQ) * t/(m-t)), at least 1: rounds until the chain-quality argument
// guarantees an honest block.
std::int64_t livenessBound(int t, int m, const Rational& muQ);

SimResult simulate(const SimConfig& cfg, const std::vector<BabelOffer>& offers,
                   const ExchangeRateTable& rates);

}  // namespace babel
