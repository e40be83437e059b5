// Python bindings: thin wrappers over the JSON scenario interface.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "babel/scenario.hpp"

namespace py = pybind11;
using namespace babel;

namespace {

AssetId findToken(const ExchangeRateTable& bl, const std::string& name) {
    for (const auto& [buyer, list] : bl.perBuyer) {
        (void)buyer;
        for (const auto& [asset, rate] : list) {
            (void)rate;
            if (asset.name == name) return asset;
        }
    }
    throw NoRates("no rates listed for token " + name);
}

std::string applyBatchesJson(const std::string& scenarioJson) {
    Scenario s = scenarioFromJson(json::parse(scenarioJson));
    Ledger ledger = s.ledger;
    json batches = json::array();
    bool allAccepted = true;
    for (std::size_t i = 0; i < s.batches.size(); ++i) {
        Tick tick{i < s.batchTicks.size() ? s.batchTicks[i].value : 0};
        auto applied = applyBatch(ledger, s.batches[i], tick);
        json entry = {{"batch", i}};
        if (std::holds_alternative<Ledger>(applied)) {
            ledger = std::get<Ledger>(std::move(applied));
            entry["accepted"] = true;
        } else {
            allAccepted = false;
            entry["accepted"] = false;
            const BatchError& err = std::get<BatchError>(applied);
            entry["error"] = err.kind == BatchError::Kind::ResidualLiability
                                 ? "ResidualLiability"
                                 : "ConditionalInvalidity";
        }
        batches.push_back(entry);
    }
    json utxo = json::array();
    for (const auto& ref : unspentOutputs(ledger)) {
        const Output& o = lookupTx(ledger, ref.id).outputs[ref.index];
        utxo.push_back({{"txId", to_hex(ref.id)},
                        {"index", ref.index},
                        {"addr", to_hex(o.addr)},
                        {"value", toJson(o.value)}});
    }
    return json{{"allAccepted", allAccepted}, {"batches", batches}, {"utxo", utxo}}.dump();
}

py::dict resultToDict(const SelectionResult& r) {
    py::dict d;
    d["block"] = r.block;
    d["utility"] = r.utility;
    d["residual"] = r.residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_babel_ledger, m) {
    m.doc() = "multi-asset UTXO ledger with limited liabilities";

    m.def("make_swap_batch_scenario",
          [] { return toJson(makeSwapBatchScenario()).dump(); },
          "Bundled two-transaction swap fixture as scenario JSON.");

    m.def("apply_batches", &applyBatchesJson, py::arg("scenario_json"),
          "Apply every batch of a scenario; returns a JSON report with the final UTXO set.");

    m.def("percentile",
          [](int p, const std::string& token, const std::string& scenarioJson) {
              Scenario s = scenarioFromJson(json::parse(scenarioJson));
              Rational r = percentile(p, findToken(s.rateTable, token), s.rateTable);
              return py::make_tuple(r.num(), r.den());
          },
          py::arg("p"), py::arg("token"), py::arg("scenario_json"),
          "Nearest-rank percentile of published rates as a (num, den) pair.");

    m.def("min_attractive_amount",
          [](std::int64_t liability, int p, const std::string& token,
             const std::string& scenarioJson) {
              Scenario s = scenarioFromJson(json::parse(scenarioJson));
              return minAttractiveAmount(liability, p, findToken(s.rateTable, token),
                                         s.rateTable);
          },
          py::arg("liability"), py::arg("p"), py::arg("token"), py::arg("scenario_json"));

    m.def("select_optimal",
          [](const std::string& instanceJson) {
              return resultToDict(selectOptimal(instanceFromJson(json::parse(instanceJson))));
          },
          py::arg("instance_json"));

    m.def("select_approx",
          [](const std::string& instanceJson, std::int64_t epsNum, std::int64_t epsDen) {
              return resultToDict(selectApprox(instanceFromJson(json::parse(instanceJson)),
                                               Rational(epsNum, epsDen)));
          },
          py::arg("instance_json"), py::arg("eps_num"), py::arg("eps_den"));

    m.def("brute_force",
          [](const std::string& instanceJson) {
              return resultToDict(bruteForce(instanceFromJson(json::parse(instanceJson))));
          },
          py::arg("instance_json"));

    m.def("liveness_bound",
          [](int t, int mm, std::int64_t muNum, std::int64_t muDen) {
              return livenessBound(t, mm, Rational(muNum, muDen));
          },
          py::arg("t"), py::arg("m"), py::arg("mu_num"), py::arg("mu_den"));

    m.def("simulate",
          [](const std::string& scenarioJson) {
              Scenario s = scenarioFromJson(json::parse(scenarioJson));
              if (s.simConfigs.empty())
                  throw std::invalid_argument("scenario carries no simulation config");
              SimResult res = simulate(s.simConfigs[0], s.offers, s.rateTable);
              json offers = json::array();
              for (const auto& o : res.perOffer) {
                  json entry = {{"offerId", o.offerId}, {"submittedRound", o.submittedRound}};
                  entry["includedRound"] =
                      o.includedRound ? json(*o.includedRound) : json(nullptr);
                  entry["settledRound"] = o.settledRound ? json(*o.settledRound) : json(nullptr);
                  offers.push_back(entry);
              }
              return json{{"perOffer", offers},
                          {"chainQuality", toJson(res.empiricalChainQuality)}}
                  .dump();
          },
          py::arg("scenario_json"));

    m.def("tx_id",
          [](const std::string& txJson) { return to_hex(txId(txFromJson(json::parse(txJson)))); },
          py::arg("tx_json"), "Canonical transaction id (hex) of a JSON-encoded transaction.");
}
