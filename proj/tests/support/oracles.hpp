#ifndef CLS_TESTS_ORACLES_HPP
#define CLS_TESTS_ORACLES_HPP

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cls/grammar.hpp"
#include "cls/labyrinth.hpp"
#include "cls/repository.hpp"
#include "cls/types.hpp"

// Reference implementations used only by the tests. They work on raw types
// and never call organize, covers or the enumerator.
namespace oracle {

using Tax = std::set<std::pair<std::string, std::string>>;  // reflexive-transitive (sub, super)

Tax closeTaxonomy(const cls::Taxonomy& t);

bool omegaLike(const cls::Type& t);
// Syntax-directed BCD subtyping with constructors and a taxonomy.
bool subtype(const cls::Type& s, const cls::Type& t, const Tax& tax = {});

// Every term of size <= maxSize derivable from nt, by generating all terms
// over the grammar's alphabet and checking membership.
std::set<cls::Term> expand(const cls::TreeGrammar& g, const cls::Nonterminal& nt, std::size_t maxSize);
bool derives(const cls::TreeGrammar& g, const cls::Nonterminal& nt, const cls::Term& t);

// Move sequences from the start to `goal` rendered as terms, up to `maxSize`.
std::set<std::string> gridPaths(const cls::Labyrinth& lab, cls::Cell goal, std::size_t maxSize);
// Follows the moves of a term; false if it leaves the grid or hits a wall.
bool walk(const cls::Labyrinth& lab, const cls::Term& term, cls::Cell& end);

// Axiom, application, intersection introduction and subsumption.
bool typeChecks(const cls::Repository& repo, const cls::Term& term, const cls::Type& type);

struct TypeGen {
    std::mt19937 rng;
    explicit TypeGen(unsigned seed) : rng(seed) {}
    // Atoms a/0, b/0, constructor C/2, arrows, intersections, omega.
    cls::Type type(int depth);
};

struct GrammarGen {
    std::mt19937 rng;
    explicit GrammarGen(unsigned seed) : rng(seed) {}
    cls::TreeGrammar grammar(std::size_t maxNonterminals = 5, std::size_t maxRules = 8);
};

}  // namespace oracle

#endif
