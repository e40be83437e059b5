// babel-ledger: scenario validation, market computations, block selection and
// liveness simulation over JSON scenario files.
//
// Exit codes: 0 success, 1 rejection/assertion failure, 2 parse or guard
// error. Set BABEL_LEDGER_LOG for progress logging on stderr.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "babel/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitParse = 2;

bool logEnabled() {
    const char* v = std::getenv("BABEL_LEDGER_LOG");
    return v != nullptr && *v != '\0';
}

void logInfo(const std::string& msg) {
    if (logEnabled()) std::cerr << "[babel-ledger] " << msg << "\n";
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool json = false;
    std::string out;
};

void emit(const GlobalOpts& g, const babel::json& j, const std::string& csv) {
    std::string text = g.json ? j.dump(2) + "\n" : csv;
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << text;
}

babel::Rational parseRational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return babel::Rational(std::stoll(s));
    return babel::Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

int cmdValidate(const GlobalOpts& g, const std::string& path, std::int64_t tickOverride) {
    babel::Scenario s = babel::loadScenario(path);
    babel::Ledger ledger = s.ledger;
    babel::json reports = babel::json::array();
    bool allAccepted = true;
    for (std::size_t i = 0; i < s.batches.size(); ++i) {
        babel::Tick tick{i < s.batchTicks.size() ? s.batchTicks[i].value : 0};
        if (tickOverride >= 0) tick.value = static_cast<std::uint64_t>(tickOverride);
        auto applied = babel::applyBatch(ledger, s.batches[i], tick);
        babel::json entry = {{"batch", i}, {"tick", tick.value}};
        if (std::holds_alternative<babel::Ledger>(applied)) {
            ledger = std::get<babel::Ledger>(std::move(applied));
            entry["accepted"] = true;
        } else {
            const babel::BatchError& err = std::get<babel::BatchError>(applied);
            allAccepted = false;
            entry["accepted"] = false;
            if (err.kind == babel::BatchError::Kind::ResidualLiability) {
                entry["error"] = "ResidualLiability";
                babel::json refs = babel::json::array();
                for (const auto& ref : err.residual)
                    refs.push_back({{"txId", babel::to_hex(ref.id)}, {"index", ref.index}});
                entry["residual"] = refs;
            } else {
                entry["error"] = "ConditionalInvalidity";
                entry["txIndex"] = err.txIndex;
                entry["report"] = babel::toJson(err.report);
            }
        }
        reports.push_back(entry);
        logInfo("batch " + std::to_string(i) +
                (entry["accepted"].get<bool>() ? " accepted" : " rejected"));
    }
    babel::json result = {{"schemaVersion", babel::kSchemaVersion},
                          {"batches", reports},
                          {"allAccepted", allAccepted}};
    std::cout << result.dump(2) << "\n";
    return allAccepted ? kExitOk : kExitRejected;
}

int cmdMarket(const GlobalOpts& g, const std::string& path, int p, const std::string& tokenName) {
    babel::Scenario s = babel::loadScenario(path);
    if (p <= 0 || p > 100) {
        std::cerr << "percentile must be in (0, 100]\n";
        return kExitParse;
    }
    // Pick the requested token, or the first one with published rates.
    std::optional<babel::AssetId> token;
    for (const auto& [buyer, list] : s.rateTable.perBuyer) {
        (void)buyer;
        for (const auto& [asset, rate] : list) {
            (void)rate;
            if (tokenName.empty() || asset.name == tokenName) {
                token = asset;
                break;
            }
        }
        if (token) break;
    }
    if (!token) {
        std::cerr << "no rates listed" << (tokenName.empty() ? "" : " for token " + tokenName)
                  << "\n";
        return kExitRejected;
    }
    try {
        babel::Rational pct = babel::percentile(p, *token, s.rateTable);
        babel::json offers = babel::json::array();
        std::string csv = "offerId,liability,minAttractiveAmount,value\n";
        for (std::size_t i = 0; i < s.offers.size(); ++i) {
            const babel::BabelOffer& o = s.offers[i];
            std::int64_t minAmount =
                babel::minAttractiveAmount(o.liability, p, *token, s.rateTable);
            babel::CandidateTransaction cand =
                babel::batchVal(o, s.nominalTable, static_cast<int>(i), 1);
            offers.push_back({{"offerId", i},
                              {"liability", o.liability},
                              {"minAttractiveAmount", minAmount},
                              {"value", cand.initialValue}});
            csv += std::to_string(i) + "," + std::to_string(o.liability) + "," +
                   std::to_string(minAmount) + "," + std::to_string(cand.initialValue) + "\n";
        }
        babel::json result = {{"schemaVersion", babel::kSchemaVersion},
                              {"token", babel::toJson(*token)},
                              {"percentile", babel::toJson(pct)},
                              {"percentileStr", pct.str()},
                              {"offers", offers}};
        emit(g, result, "percentile," + pct.str() + "\n" + csv);
        return kExitOk;
    } catch (const babel::NoRates& e) {
        std::cerr << e.what() << "\n";
        return kExitRejected;
    } catch (const babel::UnpricedToken& e) {
        std::cerr << e.what() << "\n";
        return kExitRejected;
    }
}

babel::json resultJson(const babel::SelectionResult& r, double millis) {
    return {{"block", r.block},
            {"utility", r.utility},
            {"residual", r.residual},
            {"maxFrontier", r.maxFrontier},
            {"wallTimeMs", millis}};
}

int cmdSelect(const GlobalOpts& g, const std::string& path, const std::string& mode,
              const std::string& epsStr, bool compare) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return kExitParse;
    }
    babel::SelectionInstance inst = babel::instanceFromJson(babel::json::parse(in));
    babel::Rational eps = parseRational(epsStr);
    if (eps <= babel::Rational(0) || eps >= babel::Rational(1)) {
        std::cerr << "eps must be in (0, 1)\n";
        return kExitParse;
    }

    auto timed = [](auto&& fn) {
        auto start = std::chrono::steady_clock::now();
        babel::SelectionResult r = fn();
        std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        return std::pair(r, ms.count());
    };

    babel::SelectionResult result;
    double millis = 0;
    if (mode == "optimal") {
        std::tie(result, millis) = timed([&] { return babel::selectOptimal(inst); });
    } else if (mode == "approx") {
        std::tie(result, millis) = timed([&] { return babel::selectApprox(inst, eps); });
    } else if (mode == "oracle") {
        if (inst.mempool.size() > 20) {
            std::cerr << "oracle mode requires n <= 20\n";
            return kExitParse;
        }
        std::tie(result, millis) = timed([&] { return babel::bruteForce(inst); });
    } else {
        std::cerr << "unknown mode: " << mode << "\n";
        return kExitParse;
    }

    babel::json out = {{"schemaVersion", babel::kSchemaVersion},
                       {"mode", mode},
                       {"result", resultJson(result, millis)}};
    bool ok = true;
    if (compare) {
        if (inst.mempool.size() > 12) {
            std::cerr << "--compare enforces n <= 12\n";
            return kExitParse;
        }
        babel::SelectionResult opt = babel::selectOptimal(inst);
        babel::SelectionResult oracle = babel::bruteForce(inst);
        babel::SelectionResult approx = babel::selectApprox(inst, eps);
        bool optimalOk = opt.utility == oracle.utility;
        bool approxOk = babel::Rational(approx.utility) >=
                        (babel::Rational(1) - eps) * babel::Rational(opt.utility);
        out["compare"] = {{"oracleUtility", oracle.utility},
                          {"optimalUtility", opt.utility},
                          {"approxUtility", approx.utility},
                          {"eps", babel::toJson(eps)},
                          {"optimalMatchesOracle", optimalOk},
                          {"approxWithinBound", approxOk}};
        ok = optimalOk && approxOk;
    }

    std::string csv = "mode,utility,residual,wallTimeMs\n" + mode + "," +
                      std::to_string(result.utility) + "," + std::to_string(result.residual) +
                      "," + std::to_string(millis) + "\n";
    emit(g, out, csv);
    return ok ? kExitOk : kExitRejected;
}

int cmdSim(const GlobalOpts& g, const std::string& path, int trials) {
    babel::Scenario s = babel::loadScenario(path);
    if (s.simConfigs.empty()) {
        std::cerr << "scenario carries no simulation config\n";
        return kExitParse;
    }
    babel::SimConfig cfg = s.simConfigs[0];
    if (g.seed != 0) cfg.seed = g.seed;
    try {
        cfg.validate();
    } catch (const babel::InvalidConfig& e) {
        std::cerr << e.what() << "\n";
        return kExitRejected;
    }

    std::string csv = "trial,offerId,submittedRound,includedRound,settledRound\n";
    std::vector<std::int64_t> latencies;
    babel::Rational qualitySum(0);
    for (int trial = 0; trial < trials; ++trial) {
        babel::SimConfig trialCfg = cfg;
        trialCfg.seed = cfg.seed + static_cast<std::uint64_t>(trial);
        babel::SimResult res = babel::simulate(trialCfg, s.offers, s.rateTable);
        qualitySum = qualitySum + res.empiricalChainQuality;
        for (const auto& o : res.perOffer) {
            csv += std::to_string(trial) + "," + std::to_string(o.offerId) + "," +
                   std::to_string(o.submittedRound) + ",";
            csv += o.includedRound ? std::to_string(*o.includedRound) : std::string("-");
            csv += ",";
            csv += o.settledRound ? std::to_string(*o.settledRound) : std::string("-");
            csv += "\n";
            if (o.includedRound)
                latencies.push_back(static_cast<std::int64_t>(*o.includedRound - o.submittedRound));
        }
        logInfo("trial " + std::to_string(trial) + " done");
    }

    std::sort(latencies.begin(), latencies.end());
    auto quantile = [&](int q) -> babel::json {
        if (latencies.empty()) return nullptr;
        std::size_t idx = std::min(latencies.size() - 1, latencies.size() * q / 100);
        return latencies[idx];
    };
    babel::Rational meanQuality = qualitySum / babel::Rational(trials);
    babel::json summary = {
        {"schemaVersion", babel::kSchemaVersion},
        {"trials", trials},
        {"livenessBound", babel::livenessBound(cfg.t, cfg.m, cfg.muQ)},
        {"latencyQuantiles", {{"p50", quantile(50)}, {"p90", quantile(90)}, {"p99", quantile(99)}}},
        {"includedOffers", latencies.size()},
        {"empiricalChainQuality", babel::toJson(meanQuality)},
        {"empiricalChainQualityStr", meanQuality.str()}};

    if (!g.out.empty()) {
        std::filesystem::create_directories(g.out);
        std::ofstream csvFile(std::filesystem::path(g.out) / "trials.csv");
        csvFile << csv;
        std::ofstream jsonFile(std::filesystem::path(g.out) / "summary.json");
        jsonFile << summary.dump(2) << "\n";
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-asset UTXO ledger with limited liabilities"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed for randomized commands");
    app.add_flag("--json", g.json, "emit JSON instead of CSV where both exist");
    app.add_option("--out", g.out, "output file (or directory for sim)");

    std::string scenarioPath, instancePath, configPath;
    std::int64_t tickOverride = -1;
    auto* validate = app.add_subcommand("validate", "apply scenario batches and report per rule");
    validate->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    validate->add_option("--tick", tickOverride, "override the admission tick");

    int percentileP = 50;
    std::string tokenName;
    auto* market = app.add_subcommand("market", "percentile, attractive amounts, offer values");
    market->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    market->add_option("--percentile", percentileP, "coverage percentile P");
    market->add_option("--token", tokenName, "token name (default: first listed)");

    std::string mode = "optimal", epsStr = "1/2";
    bool compare = false;
    auto* select = app.add_subcommand("select", "block selection over a mempool instance");
    select->add_option("instance", instancePath, "selection instance JSON file")->required();
    select->add_option("--mode", mode, "optimal | approx | oracle");
    select->add_option("--eps", epsStr, "approximation epsilon, e.g. 1/2");
    select->add_flag("--compare", compare, "cross-check optimal/oracle/approx");

    int trials = 1;
    auto* sim = app.add_subcommand("sim", "round-based spot market simulation");
    sim->add_option("config", configPath, "scenario JSON with simConfigs/offers/rates")
        ->required();
    sim->add_option("--trials", trials, "number of seeded trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (validate->parsed()) return cmdValidate(g, scenarioPath, tickOverride);
        if (market->parsed()) return cmdMarket(g, scenarioPath, percentileP, tokenName);
        if (select->parsed()) return cmdSelect(g, instancePath, mode, epsStr, compare);
        if (sim->parsed()) return cmdSim(g, configPath, trials);
    } catch (const babel::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRejected;
    }
    return kExitParse;
}
