#pragma once

#include <map>
#include <variant>

#include "babel/ledger.hpp"

namespace babel {

// Rule numbering follows the conditional-validity rule set; rule 2 (the
// non-negative-outputs rule) is struck and never appears in a report.
enum RuleId : int {
    kRuleTickInInterval = 1,
    kRuleInputsUnspent = 3,
    kRuleValuePreserved = 4,
    kRuleNoLocalDoubleSpend = 5,
    kRuleInputsValidate = 6,
    kRuleKeysMatchAddresses = 7,
    kRuleForging = 8,
    kRuleScriptsValidate = 9,
};

struct RuleResult {
    bool passed = false;
    std::string diagnostic;  // empty on pass
};

struct ValidationReport {
    std::map<int, RuleResult> perRule;
    bool overall = false;
};

// policy IDs of assets whose amount varies between the two bundles
std::set<PolicyId> policiesWithChange(const Quantities& v1, const Quantities& v2);

// policy IDs whose supply is changed by t, comparing per-output positive and
// negative parts of the spent values against the produced values
std::set<PolicyId> changedSupply(const Tx& t, const Ledger& l);

struct ScriptContext {
    Address self{};  // the script's own address == the policy id it governs
    const Tx& tx;
    std::vector<Output> spentOutputs;
    bool ledgerEmpty = false;
};

bool runScript(const PolicyScript& s, const ScriptContext& ctx);

ValidationReport checkConditionalValidity(const Tx& t, const Ledger& l, Tick currentTick);

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ticks[i] is the tick at which l.txs[i] (newest-first) was admitted.
bool isConditionallyValidLedger(const Ledger& l, const std::vector<Tick>& ticks);
bool isFullyValidLedger(const Ledger& l, const std::vector<Tick>& ticks);

struct BatchError {
    enum class Kind { ConditionalInvalidity, ResidualLiability };
    Kind kind;
    std::size_t txIndex = 0;      // first failing transaction (ConditionalInvalidity)
    ValidationReport report;      // ConditionalInvalidity
    std::set<OutputRef> residual; // liability-bearing outputs (ResidualLiability)
};

// Validates each transaction of b in order against l extended by the batch
// prefix, all at currentTick; the result must be free of unspent liabilities.
// On error the input ledger is left untouched.
std::variant<Ledger, BatchError> applyBatch(const Ledger& l, const Batch& b, Tick currentTick);

}  // namespace babel
