#ifndef CLS_DEBUGGER_HPP
#define CLS_DEBUGGER_HPP

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/hypergraph.hpp"
#include "cls/inhabitation.hpp"
#include "cls/repository.hpp"

// Views over a finished trace, shared by the CLI artifacts and the HTTP API.
namespace cls {

enum class UninhabitedReason { NoUsableCombinator, UnproductiveCycle };

const char* reasonName(UninhabitedReason r);

struct ReportEntry {
    Nonterminal type;
    UninhabitedReason reason;

    friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct Report {
    std::vector<ReportEntry> entries;
};

// One entry per unproductive nonterminal of the final grammar, in discovery
// order. A failed step takes precedence over an unproductive cycle.
Report computeReport(const DebugTrace& trace);
nlohmann::ordered_json reportToJson(const Report& report);

SourceLookup sourcesOf(const Repository& repository);

// Result graph of the final grammar, or {"solution": false, ...} when the
// start symbol is uninhabited.
nlohmann::ordered_json resultDocument(const DebugTrace& trace, bool includeUnproductive, const SourceLookup& sources = {});
std::string resultDot(const DebugTrace& trace, bool includeUnproductive, const SourceLookup& sources = {});

Hypergraph stepGraph(const DebugTrace& trace, std::size_t step, const SourceLookup& sources = {});

nlohmann::ordered_json termsToJson(const std::vector<Term>& terms);

}  // namespace cls

#endif
