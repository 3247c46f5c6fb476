#include "cls/debugger.hpp"

#include <map>
#include <memory>
#include <set>

namespace cls {

const char* reasonName(UninhabitedReason r) {
    switch (r) {
    case UninhabitedReason::NoUsableCombinator:
        return "NoUsableCombinator";
    case UninhabitedReason::UnproductiveCycle:
        return "UnproductiveCycle";
    }
    return "";
}

Report computeReport(const DebugTrace& trace) {
    std::set<std::string> failed;
    for (const auto& s : trace.steps) {
        if (s.failure) failed.insert(s.target.text());
    }
    const auto productive = productiveNonterminals(trace.final);
    Report report;
    for (const auto& nt : trace.final.nonterminals()) {
        if (productive.contains(nt)) continue;
        report.entries.push_back({nt, failed.contains(nt.text()) ? UninhabitedReason::NoUsableCombinator
                                                                  : UninhabitedReason::UnproductiveCycle});
    }
    return report;
}

nlohmann::ordered_json reportToJson(const Report& report) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json entry;
        entry["type"] = e.type.text();
        entry["reason"] = reasonName(e.reason);
        entries.push_back(std::move(entry));
    }
    nlohmann::ordered_json out;
    out["entries"] = std::move(entries);
    return out;
}

SourceLookup sourcesOf(const Repository& repository) {
    auto table = std::make_shared<std::map<std::string, std::string>>();
    for (const auto& c : repository.combinators()) {
        if (c.source) table->emplace(c.name, *c.source);
    }
    return [table](std::string_view name) -> std::optional<std::string> {
        auto it = table->find(std::string(name));
        if (it == table->end()) return std::nullopt;
        return it->second;
    };
}

namespace {

std::optional<UninhabitedReason> startFailure(const DebugTrace& trace) {
    if (trace.inhabited()) return std::nullopt;
    for (const auto& e : computeReport(trace).entries) {
        if (e.type == trace.start()) return e.reason;
    }
    return UninhabitedReason::UnproductiveCycle;
}

std::string noSolutionMessage(const DebugTrace& trace, UninhabitedReason reason) {
    std::string message = "No solution: type " + trace.start().text() + " is not inhabited. ";
    if (reason == UninhabitedReason::NoUsableCombinator) {
        message += "No combinator in the repository can produce it.";
    } else {
        message += "Every candidate derivation depends on an unproductive cycle.";
    }
    return message;
}

Hypergraph resultGraph(const DebugTrace& trace, bool includeUnproductive, const SourceLookup& sources) {
    Hypergraph h = fromGrammar(trace.final, {}, sources);
    return includeUnproductive ? h : filterUnproductive(h);
}

}  // namespace

nlohmann::ordered_json resultDocument(const DebugTrace& trace, bool includeUnproductive, const SourceLookup& sources) {
    if (auto reason = startFailure(trace)) {
        nlohmann::ordered_json out;
        out["solution"] = false;
        out["reason"] = reasonName(*reason);
        out["message"] = noSolutionMessage(trace, *reason);
        return out;
    }
    return toJson(resultGraph(trace, includeUnproductive, sources));
}

std::string resultDot(const DebugTrace& trace, bool includeUnproductive, const SourceLookup& sources) {
    if (auto reason = startFailure(trace)) {
        return "// " + noSolutionMessage(trace, *reason) + "\ndigraph hypergraph {\n}\n";
    }
    return toDot(resultGraph(trace, includeUnproductive, sources));
}

Hypergraph stepGraph(const DebugTrace& trace, std::size_t step, const SourceLookup& sources) {
    Snapshot snap = replay(trace, step);
    return fromGrammar(snap.grammar, snap.todo, sources);
}

nlohmann::ordered_json termsToJson(const std::vector<Term>& terms) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& t : terms) list.push_back(t.text());
    nlohmann::ordered_json out;
    out["terms"] = std::move(list);
    return out;
}

}  // namespace cls
