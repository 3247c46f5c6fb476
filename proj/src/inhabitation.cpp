#include "cls/inhabitation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace cls {

namespace {

bool isSubset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Keeps only sets with no proper subset in `sets`; also drops duplicates.
void keepMinimal(std::vector<std::vector<std::size_t>>& sets) {
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<std::vector<std::size_t>> kept;
    for (auto& s : sets) {
        bool redundant = std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return isSubset(k, s); });
        if (!redundant) kept.push_back(std::move(s));
    }
    sets = std::move(kept);
}

bool argumentsBelow(const ArgumentVector& a, const ArgumentVector& b, const TaxonomyClosure& tax) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!subtype(a[i], b[i], tax)) return false;
    }
    return true;
}

const char* failureName(StepFailure f) {
    switch (f) {
    case StepFailure::NoUsableCombinator:
        return "NoUsableCombinator";
    }
    return "";
}

}  // namespace

std::vector<std::vector<std::size_t>> coverSets(std::span<const Type> paths, std::size_t arity,
                                                const OrganizedType& target, const TaxonomyClosure& tax) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (path::arity(paths[i]) >= arity) eligible.push_back(i);
    }
    std::vector<std::vector<std::size_t>> sets;
    if (target.empty()) {
        for (std::size_t i : eligible) sets.push_back({i});
        return sets;
    }

    // A single path covers a target path iff some member of a set does, so
    // every minimal set picks one candidate per target path.
    sets.push_back({});
    for (const auto& q : target.paths()) {
        std::vector<std::size_t> candidates;
        for (std::size_t i : eligible) {
            const Type& t = path::tail(paths[i], arity);
            if (coveredBy(std::span<const Type>(&t, 1), q, tax)) candidates.push_back(i);
        }
        if (candidates.empty()) return {};
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : sets) {
            for (std::size_t i : candidates) {
                auto grown = s;
                auto at = std::lower_bound(grown.begin(), grown.end(), i);
                if (at == grown.end() || *at != i) grown.insert(at, i);
                next.push_back(std::move(grown));
            }
        }
        keepMinimal(next);
        sets = std::move(next);
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

std::vector<ArgumentVector> covers(std::span<const Type> paths, std::size_t arity, const OrganizedType& target,
                                   const TaxonomyClosure& tax) {
    std::vector<ArgumentVector> out;
    for (const auto& set : coverSets(paths, arity, target, tax)) {
        ArgumentVector args;
        for (std::size_t i = 0; i < arity; ++i) {
            std::vector<Type> parts;
            for (std::size_t p : set) {
                OrganizedType piece = organize(path::arg(paths[p], i));
                parts.insert(parts.end(), piece.paths().begin(), piece.paths().end());
            }
            args.emplace_back(std::move(parts));
        }
        out.push_back(std::move(args));
    }
    return out;
}

std::vector<ArgumentVector> reduceCovers(std::vector<ArgumentVector> covers, const TaxonomyClosure& tax) {
    const std::size_t n = covers.size();
    std::vector<bool> drop(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n && !drop[i]; ++j) {
            if (i == j || !argumentsBelow(covers[i], covers[j], tax)) continue;
            // i needs at least as much as j; drop unless j is equivalent and later.
            if (j < i || !argumentsBelow(covers[j], covers[i], tax)) drop[i] = true;
        }
    }
    std::vector<ArgumentVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!drop[i]) out.push_back(std::move(covers[i]));
    }
    return out;
}

std::vector<Type> combinatorPaths(const Combinator& c) {
    std::vector<Type> out;
    for (const auto& s : substitutions(c)) {
        OrganizedType instance = organize(applySubstitution(s, c.type));
        for (const auto& p : instance.paths()) {
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    }
    return out;
}

DebugTrace inhabit(const Repository& repository, const Type& target, const InhabitOptions& options) {
    if (!target.isClosed()) throw InvalidTargetError("inhabitation target must be closed: " + target.text());
    OrganizedType start = organize(target);
    if (start.empty()) throw InvalidTargetError("inhabitation target is equivalent to omega: " + target.text());

    struct Prepared {
        const Combinator* combinator;
        std::vector<Type> paths;
        std::size_t maxArity = 0;
    };
    std::vector<Prepared> prepared;
    for (const auto& c : repository.combinators()) {
        Prepared p{&c, combinatorPaths(c)};
        for (const auto& t : p.paths) p.maxArity = std::max(p.maxArity, path::arity(t));
        prepared.push_back(std::move(p));
    }

    auto checkDeadline = [&] {
        if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) throw InhabitationTimeout();
    };

    const TaxonomyClosure& tax = repository.subtypes();
    DebugTrace trace;
    TreeGrammar grammar(start);
    std::deque<Nonterminal> queue{start};
    std::set<std::string> seen{start.text()};

    while (!queue.empty()) {
        StepRecord step;
        step.index = trace.steps.size();
        step.target = std::move(queue.front());
        queue.pop_front();

        for (const auto& p : prepared) {
            checkDeadline();
            for (std::size_t k = 0; k <= p.maxArity; ++k) {
                auto found = covers(p.paths, k, step.target, tax);
                if (options.reduceSubsumedCovers) found = reduceCovers(std::move(found), tax);
                for (auto& args : found) {
                    Rule rule{step.target, p.combinator->name, std::move(args)};
                    if (!grammar.addRule(rule)) continue;
                    for (const auto& a : rule.args) {
                        if (seen.insert(a.text()).second) {
                            queue.push_back(a);
                            step.newTargets.push_back(a);
                        }
                    }
                    step.rulesAdded.push_back(std::move(rule));
                }
            }
        }
        if (step.rulesAdded.empty()) step.failure = StepFailure::NoUsableCombinator;
        trace.steps.push_back(std::move(step));
    }

    trace.pruned = prune(grammar);
    trace.final = std::move(grammar);
    return trace;
}

Snapshot replay(const DebugTrace& trace, std::size_t upTo) {
    if (upTo > trace.steps.size()) {
        throw std::out_of_range("step " + std::to_string(upTo) + " is past the last step " +
                                std::to_string(trace.steps.size()));
    }
    Snapshot snap{TreeGrammar(trace.start()), {trace.start()}};
    std::deque<Nonterminal> queue{trace.start()};
    for (std::size_t i = 0; i < upTo; ++i) {
        const auto& step = trace.steps[i];
        queue.pop_front();
        for (const auto& r : step.rulesAdded) snap.grammar.addRule(r);
        queue.insert(queue.end(), step.newTargets.begin(), step.newTargets.end());
    }
    snap.todo.assign(queue.begin(), queue.end());
    return snap;
}

nlohmann::ordered_json traceToJson(const DebugTrace& trace) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json rules = nlohmann::ordered_json::array();
        for (const auto& r : s.rulesAdded) rules.push_back(ruleToJson(r));
        nlohmann::ordered_json targets = nlohmann::ordered_json::array();
        for (const auto& t : s.newTargets) targets.push_back(t.text());
        nlohmann::ordered_json entry;
        entry["index"] = s.index;
        entry["target"] = s.target.text();
        entry["rules"] = std::move(rules);
        entry["newTargets"] = std::move(targets);
        if (s.failure) entry["failure"] = failureName(*s.failure);
        steps.push_back(std::move(entry));
    }
    nlohmann::ordered_json out;
    out["steps"] = std::move(steps);
    out["final"] = grammarToJson(trace.final);
    out["pruned"] = grammarToJson(trace.pruned);
    return out;
}

}  // namespace cls
