#include "babel/scenario.hpp"

#include <fstream>

#include "babel/hash.hpp"

namespace babel {

namespace {

PubKey derivedKey(const std::string& label) {
    return sha256({reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
}

}  // namespace

json toJson(const Quantities& q) {
    json arr = json::array();
    for (const auto& [asset, amount] : q.entries()) {
        arr.push_back({{"pid", to_hex(asset.pid)},
                       {"name", asset.name},
                       {"quantity", static_cast<std::int64_t>(amount)}});
    }
    return arr;
}

Quantities quantitiesFromJson(const json& j) {
    Quantities q;
    for (const auto& entry : j) {
        AssetId asset{digest_from_hex(entry.at("pid").get<std::string>()),
                      entry.at("name").get<std::string>()};
        q.set(asset, entry.at("quantity").get<std::int64_t>());
    }
    return q;
}

json toJson(const AssetId& a) { return {{"pid", to_hex(a.pid)}, {"name", a.name}}; }

AssetId assetFromJson(const json& j) {
    return {digest_from_hex(j.at("pid").get<std::string>()), j.at("name").get<std::string>()};
}

json toJson(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

Rational rationalFromJson(const json& j) {
    std::int64_t num = j.at("num").get<std::int64_t>();
    std::int64_t den = j.at("den").get<std::int64_t>();
    if (den == 0) return Rational::infinity();
    return Rational(num, den);
}

json toJson(const PolicyScript& s) {
    switch (s.kind) {
        case PolicyScript::Kind::AlwaysTrue:
            return {{"kind", "AlwaysTrue"}};
        case PolicyScript::Kind::AlwaysFalse:
            return {{"kind", "AlwaysFalse"}};
        case PolicyScript::Kind::SignedBy:
            return {{"kind", "SignedBy"}, {"key", to_hex(s.key)}};
        case PolicyScript::Kind::ForbidPairProduction:
            return {{"kind", "ForbidPairProduction"}, {"inner", toJson(*s.inner)}};
        case PolicyScript::Kind::PrimaryCurrency:
            return {{"kind", "PrimaryCurrency"}};
    }
    throw std::invalid_argument("unknown policy kind");
}

PolicyScript policyFromJson(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "AlwaysTrue") return PolicyScript::alwaysTrue();
    if (kind == "AlwaysFalse") return PolicyScript::alwaysFalse();
    if (kind == "SignedBy")
        return PolicyScript::signedBy(digest_from_hex(j.at("key").get<std::string>()));
    if (kind == "ForbidPairProduction")
        return PolicyScript::forbidPairProduction(policyFromJson(j.at("inner")));
    if (kind == "PrimaryCurrency") return PolicyScript::primaryCurrency();
    throw std::invalid_argument("unknown policy kind: " + kind);
}

json toJson(const Tx& t) {
    json inputs = json::array();
    for (const auto& in : t.inputs)
        inputs.push_back({{"txId", to_hex(in.outputRef.id)},
                          {"index", in.outputRef.index},
                          {"key", to_hex(in.key)}});
    json outputs = json::array();
    for (const auto& o : t.outputs)
        outputs.push_back({{"addr", to_hex(o.addr)}, {"value", toJson(o.value)}});
    json interval;
    interval["lo"] = t.validityInterval.lo;
    if (t.validityInterval.unboundedAbove())
        interval["hi"] = nullptr;
    else
        interval["hi"] = t.validityInterval.hi;
    json scripts = json::array();
    for (const auto& s : t.scripts) scripts.push_back(toJson(s));
    json sigs = json::array();
    for (const auto& s : t.sigs) sigs.push_back(to_hex(s));
    return {{"inputs", inputs},        {"outputs", outputs}, {"validityInterval", interval},
            {"forge", toJson(t.forge)}, {"scripts", scripts}, {"sigs", sigs}};
}

Tx txFromJson(const json& j) {
    Tx t;
    for (const auto& in : j.at("inputs")) {
        t.inputs.push_back(Input{OutputRef{digest_from_hex(in.at("txId").get<std::string>()),
                                           in.at("index").get<std::uint32_t>()},
                                 digest_from_hex(in.at("key").get<std::string>())});
    }
    for (const auto& o : j.at("outputs"))
        t.outputs.push_back(Output{digest_from_hex(o.at("addr").get<std::string>()),
                                   quantitiesFromJson(o.at("value"))});
    const json& interval = j.at("validityInterval");
    t.validityInterval.lo = interval.at("lo").get<std::uint64_t>();
    if (!interval.at("hi").is_null()) t.validityInterval.hi = interval.at("hi").get<std::uint64_t>();
    t.forge = quantitiesFromJson(j.at("forge"));
    for (const auto& s : j.at("scripts")) t.scripts.push_back(policyFromJson(s));
    for (const auto& s : j.at("sigs")) t.sigs.push_back(digest_from_hex(s.get<std::string>()));
    t.normalize();
    return t;
}

json toJson(const ValidationReport& rep) {
    json rules = json::object();
    for (const auto& [rule, res] : rep.perRule) {
        rules[std::to_string(rule)] = {{"passed", res.passed}, {"diagnostic", res.diagnostic}};
    }
    return {{"perRule", rules}, {"overall", rep.overall}};
}

json toJson(const ExchangeRateTable& bl) {
    json buyers = json::object();
    for (const auto& [buyer, list] : bl.perBuyer) {
        json rates = json::array();
        for (const auto& [token, rate] : list)
            rates.push_back({{"token", toJson(token)}, {"rate", toJson(rate)}});
        buyers[buyer] = rates;
    }
    return buyers;
}

ExchangeRateTable rateTableFromJson(const json& j) {
    ExchangeRateTable bl;
    for (const auto& [buyer, rates] : j.items()) {
        std::vector<std::pair<AssetId, Rational>> list;
        for (const auto& entry : rates)
            list.emplace_back(assetFromJson(entry.at("token")), rationalFromJson(entry.at("rate")));
        bl.perBuyer[buyer] = std::move(list);
    }
    return bl;
}

json toJson(const BabelOffer& o) {
    json tokens = json::array();
    for (const auto& [token, amount] : o.tokens)
        tokens.push_back({{"token", toJson(token)}, {"amount", amount}});
    return {{"txId", to_hex(o.txId)}, {"tokens", tokens}, {"liability", o.liability}};
}

BabelOffer offerFromJson(const json& j) {
    BabelOffer o;
    if (j.contains("txId")) o.txId = digest_from_hex(j.at("txId").get<std::string>());
    for (const auto& entry : j.at("tokens"))
        o.tokens.emplace_back(assetFromJson(entry.at("token")),
                              entry.at("amount").get<std::int64_t>());
    o.liability = j.at("liability").get<std::int64_t>();
    return o;
}

json toJson(const NominalValueTable& t) {
    json arr = json::array();
    for (const auto& [token, value] : t.perToken)
        arr.push_back({{"token", toJson(token)}, {"value", toJson(value)}});
    return arr;
}

NominalValueTable nominalTableFromJson(const json& j) {
    NominalValueTable t;
    for (const auto& entry : j)
        t.perToken[assetFromJson(entry.at("token"))] = rationalFromJson(entry.at("value"));
    return t;
}

json toJson(const SelectionInstance& inst) {
    json txs = json::array();
    for (const auto& tx : inst.mempool) {
        json entry = {{"id", tx.id},
                      {"value", tx.initialValue},
                      {"liability", -tx.liabilityCost},
                      {"size", tx.size}};
        auto it = inst.valueModel.tokenOf.find(tx.id);
        if (it != inst.valueModel.tokenOf.end()) entry["token"] = it->second.name;
        txs.push_back(entry);
    }
    json model = {{"mode", inst.valueModel.mode == ValueModel::Mode::Constant ? "constant"
                                                                              : "tokenDecay"}};
    if (inst.valueModel.mode == ValueModel::Mode::TokenDecay)
        model["alpha"] = toJson(inst.valueModel.alpha);
    return {{"schemaVersion", kSchemaVersion},
            {"blockSize", inst.blockSize},
            {"reserve", inst.reserve},
            {"valueModel", model},
            {"txs", txs}};
}

SelectionInstance instanceFromJson(const json& j) {
    SelectionInstance inst;
    inst.blockSize = j.at("blockSize").get<std::int64_t>();
    inst.reserve = j.at("reserve").get<std::int64_t>();
    const json& model = j.at("valueModel");
    const std::string mode = model.at("mode").get<std::string>();
    if (mode == "tokenDecay") {
        inst.valueModel.mode = ValueModel::Mode::TokenDecay;
        inst.valueModel.alpha = rationalFromJson(model.at("alpha"));
    } else if (mode != "constant") {
        throw std::invalid_argument("unknown value model mode: " + mode);
    }
    for (const auto& entry : j.at("txs")) {
        CandidateTransaction tx;
        tx.id = entry.at("id").get<int>();
        tx.initialValue = entry.at("value").get<std::int64_t>();
        std::int64_t liability = entry.at("liability").get<std::int64_t>();
        tx.liabilityCost = liability < 0 ? -liability : liability;
        tx.size = entry.at("size").get<std::int64_t>();
        if (entry.contains("token"))
            inst.valueModel.tokenOf[tx.id] = AssetId{{}, entry.at("token").get<std::string>()};
        inst.mempool.push_back(tx);
    }
    return inst;
}

json toJson(const SimConfig& cfg) {
    return {{"schemaVersion", kSchemaVersion},
            {"m", cfg.m},
            {"t", cfg.t},
            {"delta", toJson(cfg.delta)},
            {"muQ", toJson(cfg.muQ)},
            {"k", cfg.k},
            {"rounds", cfg.rounds},
            {"coverageP", cfg.coverageP},
            {"seed", cfg.seed},
            {"frontRunProb", toJson(cfg.frontRunProb)}};
}

SimConfig simConfigFromJson(const json& j) {
    SimConfig cfg;
    cfg.m = j.at("m").get<int>();
    cfg.t = j.at("t").get<int>();
    cfg.delta = rationalFromJson(j.at("delta"));
    cfg.muQ = rationalFromJson(j.at("muQ"));
    cfg.k = j.at("k").get<int>();
    cfg.rounds = j.at("rounds").get<int>();
    cfg.coverageP = j.at("coverageP").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("frontRunProb")) cfg.frontRunProb = rationalFromJson(j.at("frontRunProb"));
    return cfg;
}

json toJson(const Scenario& s) {
    json ledger = json::array();
    for (const auto& t : s.ledger.txs) ledger.push_back(toJson(t));
    json ledgerTicks = json::array();
    for (const auto& t : s.ledgerTicks) ledgerTicks.push_back(t.value);
    json batches = json::array();
    for (const auto& b : s.batches) {
        json txs = json::array();
        for (const auto& t : b.txs) txs.push_back(toJson(t));
        batches.push_back(txs);
    }
    json batchTicks = json::array();
    for (const auto& t : s.batchTicks) batchTicks.push_back(t.value);
    json instances = json::array();
    for (const auto& inst : s.selectionInstances) instances.push_back(toJson(inst));
    json configs = json::array();
    for (const auto& cfg : s.simConfigs) configs.push_back(toJson(cfg));
    json offers = json::array();
    for (const auto& o : s.offers) offers.push_back(toJson(o));
    return {{"schemaVersion", kSchemaVersion},
            {"ledger", ledger},
            {"ledgerTicks", ledgerTicks},
            {"batches", batches},
            {"batchTicks", batchTicks},
            {"rateTable", toJson(s.rateTable)},
            {"nominalTable", toJson(s.nominalTable)},
            {"offers", offers},
            {"selectionInstances", instances},
            {"simConfigs", configs}};
}

Scenario scenarioFromJson(const json& j) {
    Scenario s;
    for (const auto& t : j.value("ledger", json::array())) s.ledger.txs.push_back(txFromJson(t));
    for (const auto& t : j.value("ledgerTicks", json::array()))
        s.ledgerTicks.push_back(Tick{t.get<std::uint64_t>()});
    for (const auto& b : j.value("batches", json::array())) {
        Batch batch;
        for (const auto& t : b) batch.txs.push_back(txFromJson(t));
        s.batches.push_back(std::move(batch));
    }
    for (const auto& t : j.value("batchTicks", json::array()))
        s.batchTicks.push_back(Tick{t.get<std::uint64_t>()});
    if (j.contains("rateTable")) s.rateTable = rateTableFromJson(j.at("rateTable"));
    if (j.contains("nominalTable")) s.nominalTable = nominalTableFromJson(j.at("nominalTable"));
    for (const auto& o : j.value("offers", json::array())) s.offers.push_back(offerFromJson(o));
    for (const auto& inst : j.value("selectionInstances", json::array()))
        s.selectionInstances.push_back(instanceFromJson(inst));
    for (const auto& cfg : j.value("simConfigs", json::array()))
        s.simConfigs.push_back(simConfigFromJson(cfg));
    return s;
}

Scenario loadScenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    json j = json::parse(in);
    return scenarioFromJson(j);
}

Scenario makeSwapBatchScenario() {
    Scenario s;
    PolicyScript t1Policy = PolicyScript::alwaysTrue();
    AssetId tokenT1{scriptAddr(t1Policy), "T1"};
    AssetId tokenT2{derivedKey("T2-policy"), "T2"};

    PubKey aliceKey = derivedKey("alice");
    PubKey bobKey = derivedKey("bob");
    Address kappa1 = keyAddr(derivedKey("kappa1"));
    Address kappa2 = keyAddr(derivedKey("kappa2"));

    // Funding: Alice holds 5 T1, Bob holds 10 T2.
    Tx genesis;
    genesis.outputs = {Output{keyAddr(aliceKey), Quantities::single(tokenT1, 5)},
                       Output{keyAddr(bobKey), Quantities::single(tokenT2, 10)}};
    for (const auto& o : genesis.outputs) genesis.forge += o.value;
    genesis.normalize();
    TxId genesisId = txId(genesis);
    s.ledger.txs = {genesis};
    s.ledgerTicks = {Tick{0}};

    // t1: Bob offers to swap 10 T2 for 5 T1. The swap output pair-produces
    // T1, so T1's policy rides along.
    Tx t1;
    t1.inputs = {Input{OutputRef{genesisId, 1}, bobKey}};
    t1.outputs = {Output{kOpenAddress, Quantities(Quantities::Map{{tokenT1, -5}, {tokenT2, 10}})},
                  Output{kappa1, Quantities::single(tokenT1, 5)}};
    t1.scripts = {t1Policy};
    t1.normalize();
    signTx(t1, {bobKey});

    // t2: Alice spends the swap output plus her 5 T1, keeping the 10 T2.
    Tx t2;
    t2.inputs = {Input{OutputRef{txId(t1), 0}, kOpenKey}, Input{OutputRef{genesisId, 0}, aliceKey}};
    t2.outputs = {Output{kappa2, Quantities::single(tokenT2, 10)}};
    t2.scripts = {t1Policy};
    t2.normalize();
    signTx(t2, {aliceKey});

    s.batches = {Batch{{t1, t2}}};
    s.batchTicks = {Tick{1}};
    return s;
}

}  // namespace babel
