#ifndef CLS_INHABITATION_HPP
#define CLS_INHABITATION_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/grammar.hpp"
#include "cls/repository.hpp"
#include "cls/types.hpp"

namespace cls {

enum class StepFailure { NoUsableCombinator };

struct StepRecord {
    std::size_t index = 0;
    Nonterminal target;
    std::vector<Rule> rulesAdded;
    // Arguments of rulesAdded seen for the first time, in enqueue order.
    std::vector<Nonterminal> newTargets;
    std::optional<StepFailure> failure;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct DebugTrace {
    std::vector<StepRecord> steps;
    TreeGrammar final;
    TreeGrammar pruned;

    const Nonterminal& start() const { return final.start(); }
    bool inhabited() const { return !pruned.rules().empty(); }

    friend bool operator==(const DebugTrace&, const DebugTrace&) = default;
};

struct InhabitOptions {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    // Drop covers whose arguments are subtypes of another cover's arguments
    // for the same combinator and arity.
    bool reduceSubsumedCovers = true;
};

class InhabitationTimeout : public Error {
public:
    InhabitationTimeout() : Error("inhabitation timed out") {}
};

// Open or omega-equivalent inhabitation target.
class InvalidTargetError : public Error {
public:
    using Error::Error;
};

DebugTrace inhabit(const Repository& repository, const Type& target, const InhabitOptions& options = {});

using ArgumentVector = std::vector<OrganizedType>;

/*
 * Argument vectors of the subset-minimal sets A of `paths` with arity >= k
 * such that the intersection of their k-tails is below `target`. Sets are
 * ordered by their sorted path indices.
 */
std::vector<ArgumentVector> covers(std::span<const Type> paths, std::size_t arity, const OrganizedType& target,
                                   const TaxonomyClosure& tax);
// Same, returning the index sets themselves.
std::vector<std::vector<std::size_t>> coverSets(std::span<const Type> paths, std::size_t arity,
                                                const OrganizedType& target, const TaxonomyClosure& tax);

// Removes argument vectors that are componentwise below another one, keeping
// the earliest of any equivalent group.
std::vector<ArgumentVector> reduceCovers(std::vector<ArgumentVector> covers, const TaxonomyClosure& tax);

// Paths of the intersection of all instances of c's type scheme.
std::vector<Type> combinatorPaths(const Combinator& c);

struct Snapshot {
    TreeGrammar grammar;
    // Enqueued but not yet processed, in queue order.
    std::vector<Nonterminal> todo;
};

// State after the first `upTo` steps; throws std::out_of_range past the end.
Snapshot replay(const DebugTrace& trace, std::size_t upTo);

nlohmann::ordered_json traceToJson(const DebugTrace& trace);

}  // namespace cls

#endif
