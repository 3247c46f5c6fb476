#ifndef CLS_GRAMMAR_HPP
#define CLS_GRAMMAR_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/types.hpp"

namespace cls {

using Nonterminal = OrganizedType;

// lhs -> combinator(args...)
struct Rule {
    Nonterminal lhs;
    std::string combinator;
    std::vector<Nonterminal> args;

    friend bool operator==(const Rule&, const Rule&) = default;
};

std::string printRule(const Rule& rule);

// Applicative term: `label` applied to `children`.
struct Term {
    std::string label;
    std::vector<Term> children;

    std::size_t size() const;
    std::string text() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term& a, const Term& b) {
        if (auto c = a.label <=> b.label; c != 0) return c;
        return a.children <=> b.children;
    }
};

Term parseTerm(std::string_view text);

class UnknownNonterminalError : public Error {
public:
    explicit UnknownNonterminalError(const Nonterminal& nt);
};

/*
 * Regular tree grammar (S, N, F, R) with no arity restriction on terminals.
 * Nonterminals and rules keep their insertion order; rules form a set.
 */
class TreeGrammar {
public:
    TreeGrammar() = default;
    explicit TreeGrammar(Nonterminal start);

    const Nonterminal& start() const { return start_; }
    const std::vector<Nonterminal>& nonterminals() const { return nonterminals_; }
    const std::set<std::string>& terminals() const { return terminals_; }
    const std::vector<Rule>& rules() const { return rules_; }

    bool contains(const Nonterminal& nt) const { return index_.contains(nt.text()); }
    bool containsRule(const Rule& rule) const;
    // Rules with the given lhs, in rule order.
    std::vector<const Rule*> rulesFor(const Nonterminal& nt) const;

    // Returns false when the nonterminal was already present.
    bool addNonterminal(const Nonterminal& nt);
    // Adds lhs and args as nonterminals; returns false for a duplicate rule.
    bool addRule(Rule rule);

    friend bool operator==(const TreeGrammar& a, const TreeGrammar& b) {
        return a.start_ == b.start_ && a.nonterminals_ == b.nonterminals_ && a.rules_ == b.rules_ &&
               a.terminals_ == b.terminals_;
    }

private:
    Nonterminal start_;
    std::vector<Nonterminal> nonterminals_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> terminals_;
    std::vector<Rule> rules_;
    std::set<std::string> ruleKeys_;
};

// Least fixed point; nonterminals in `assumeProductive` count as productive.
std::set<Nonterminal> productiveNonterminals(const TreeGrammar& g,
                                             std::span<const Nonterminal> assumeProductive = {});

// Drops rules touching unproductive nonterminals, then everything
// unreachable from the start symbol.
TreeGrammar prune(const TreeGrammar& g);

/*
 * The first `max` words of L_nt(g) ordered by size, then rule order, then
 * children left to right. Terms larger than `maxSize` are never produced.
 */
std::vector<Term> enumerateTerms(const TreeGrammar& g, const Nonterminal& nt, std::size_t max,
                                 std::size_t maxSize = std::numeric_limits<std::size_t>::max());

bool memberOf(const TreeGrammar& g, const Nonterminal& nt, const Term& t);

nlohmann::ordered_json grammarToJson(const TreeGrammar& g);
nlohmann::ordered_json ruleToJson(const Rule& rule);

}  // namespace cls

#endif
