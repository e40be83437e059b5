#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "babel/rational.hpp"
#include "babel/types.hpp"

namespace babel {

struct CandidateTransaction {
    int id = 0;
    std::int64_t initialValue = 0;   // v_io, primary units
    std::int64_t liabilityCost = 0;  // |l_i| >= 0
    std::int64_t size = 1;           // bytes, >= 1
};

// Value of a candidate as a function of the already-selected block. Constant
// keeps v_io; TokenDecay shrinks it linearly with the number of selected
// candidates offering the same token, clamped at zero.
struct ValueModel {
    enum class Mode { Constant, TokenDecay };
    Mode mode = Mode::Constant;
    std::map<int, AssetId> tokenOf;  // candidate id -> offered token (TokenDecay)
    Rational alpha = Rational(0);    // in [0,1]
};

struct SelectionInstance {
    std::vector<CandidateTransaction> mempool;
    std::int64_t blockSize = 0;  // S_B
    std::int64_t reserve = 0;    // R
    ValueModel valueModel;
};

std::int64_t candidateValue(const CandidateTransaction& tx, const std::set<int>& prefixBlock,
                            const ValueModel& model);

// One Pareto tuple of the dynamic program: exact space used, exact value
// attained, remaining liability reserve, and the participation bit of the
// level's transaction.
struct DpTuple {
    std::int64_t space = 0;
    std::int64_t value = 0;
    std::int64_t residual = 0;
    bool participation = false;

    bool operator==(const DpTuple&) const = default;
};

// Keeps the Pareto frontier over (space, value, residual): a tuple is dropped
// iff some other tuple uses no more space, attains at least as much value and
// keeps at least as much residual. With cost-free candidates this is the plain
// space/value staircase. (space, value, residual) duplicates keep bit 0.
std::vector<DpTuple> pruneDominated(std::vector<DpTuple> tuples);

struct DpTable {
    std::vector<std::vector<DpTuple>> lists;      // lists[i] is U[i+1]
    std::vector<CandidateTransaction> sorted;     // descending value/size order
    std::vector<std::int64_t> values;             // value the DP added per level
    std::size_t maxFrontier = 0;                  // longest list seen
};

struct TupleNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reconstructs the selected id set for the tuple with the given space in U[j]
// (j is 1-based) by walking the participation bits downwards.
std::set<int> getBlock(const DpTable& u, std::size_t j, std::int64_t targetSpace);

struct SelectionResult {
    std::vector<int> block;  // selected ids, in selection (sorted) order
    std::int64_t utility = 0;
    std::int64_t residual = 0;
    std::size_t maxFrontier = 0;
};

SelectionResult selectOptimal(const SelectionInstance& inst);

struct EmptyMempool : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// FPTAS: scales values by mu = eps * v_omax / n (clamped to at least 1, where
// scaling would be lossless anyway) and runs the optimal DP on the scaled
// instance; the reported utility is re-measured in original values. v_omax is
// the largest value among candidates that individually fit the block and the
// reserve, so v_omax <= OPT and the (1 - eps) bound holds.
SelectionResult selectApprox(const SelectionInstance& inst, const Rational& eps);

struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exhaustive oracle over all subsets; n <= 20.
SelectionResult bruteForce(const SelectionInstance& inst);

}  // namespace babel
