#pragma once

#include <nlohmann/json.hpp>

#include "babel/liveness.hpp"
#include "babel/market.hpp"
#include "babel/selection.hpp"
#include "babel/validation.hpp"

namespace babel {

using json = nlohmann::json;

// JSON mirrors of the canonical encodings; the binary form is only used for
// hashing, JSON is the human interface. Schemas carry "schemaVersion": 1.
inline constexpr int kSchemaVersion = 1;

json toJson(const Quantities& q);
Quantities quantitiesFromJson(const json& j);

json toJson(const AssetId& a);
AssetId assetFromJson(const json& j);

json toJson(const Rational& r);
Rational rationalFromJson(const json& j);

json toJson(const PolicyScript& s);
PolicyScript policyFromJson(const json& j);

json toJson(const Tx& t);
Tx txFromJson(const json& j);

json toJson(const ValidationReport& rep);

json toJson(const ExchangeRateTable& bl);
ExchangeRateTable rateTableFromJson(const json& j);

json toJson(const BabelOffer& o);
BabelOffer offerFromJson(const json& j);

json toJson(const NominalValueTable& t);
NominalValueTable nominalTableFromJson(const json& j);

json toJson(const SelectionInstance& inst);
SelectionInstance instanceFromJson(const json& j);

json toJson(const SimConfig& cfg);
SimConfig simConfigFromJson(const json& j);

struct Scenario {
    Ledger ledger;
    std::vector<Tick> ledgerTicks;
    std::vector<Batch> batches;
    std::vector<Tick> batchTicks;  // one tick per batch
    ExchangeRateTable rateTable;
    NominalValueTable nominalTable;
    std::vector<BabelOffer> offers;
    std::vector<SelectionInstance> selectionInstances;
    std::vector<SimConfig> simConfigs;
};

json toJson(const Scenario& s);
Scenario scenarioFromJson(const json& j);

Scenario loadScenario(const std::string& path);

// The two-transaction swap batch fixture: a funding ledger, then t1 offering
// to swap 10 T2 for 5 T1 via an open liability output, and t2 resolving it.
Scenario makeSwapBatchScenario();

}  // namespace babel
