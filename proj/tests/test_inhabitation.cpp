#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "cls/inhabitation.hpp"
#include "support/oracles.hpp"

using namespace cls;

namespace {

Nonterminal N(const char* text) { return organize(parseType(text)); }

const Repository& gamma() {
    static const Repository r = loadRepositoryFile(CLS_DATA_DIR "/labyrinth_5x2.json");
    return r;
}

const Repository& gammaEx() {
    static const Repository r = loadRepositoryFile(CLS_DATA_DIR "/labyrinth_3x4.json");
    return r;
}

std::vector<std::string> ruleTexts(const std::vector<Rule>& rules) {
    std::vector<std::string> out;
    for (const auto& r : rules) out.push_back(printRule(r));
    return out;
}

Type meet(const std::vector<Type>& ts) {
    if (ts.empty()) return Type::omega();
    Type acc = ts[0];
    for (std::size_t i = 1; i < ts.size(); ++i) acc = Type::intersection(acc, ts[i]);
    return acc;
}

// All subset-minimal index sets whose k-tails meet below the target.
std::vector<std::vector<std::size_t>> bruteCovers(const std::vector<Type>& paths, std::size_t k, const Type& target,
                                                  const oracle::Tax& tax) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (path::arity(paths[i]) >= k) eligible.push_back(i);
    }
    std::vector<std::vector<std::size_t>> good;
    for (std::size_t mask = 1; mask < (std::size_t{1} << eligible.size()); ++mask) {
        std::vector<std::size_t> set;
        std::vector<Type> tails;
        for (std::size_t b = 0; b < eligible.size(); ++b) {
            if (mask & (std::size_t{1} << b)) {
                set.push_back(eligible[b]);
                tails.push_back(path::tail(paths[eligible[b]], k));
            }
        }
        if (oracle::subtype(meet(tails), target, tax)) good.push_back(set);
    }
    std::vector<std::vector<std::size_t>> minimal;
    for (const auto& a : good) {
        bool strictSuperset = std::any_of(good.begin(), good.end(), [&](const auto& b) {
            return b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
        });
        if (!strictSuperset) minimal.push_back(a);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

}  // namespace

TEST_CASE("covers for down") {
    auto paths = combinatorPaths(*gamma().find("down"));
    auto result = covers(paths, 1, N("Pos(0, 1)"), gamma().subtypes());
    // two subset-minimal covers; the second asks for Pos(0, 0) & Pos(2, 0),
    // which is below the first argument and adds nothing
    REQUIRE(result.size() == 2);
    CHECK(result[1][0].text() == "Pos(0, omega) & Pos(2, omega) & Pos(omega, 0)");
    result = reduceCovers(result, gamma().subtypes());
    REQUIRE(result.size() == 1);
    REQUIRE(result[0].size() == 1);
    CHECK(result[0][0].text() == "Pos(0, omega) & Pos(omega, 0)");
    CHECK(covers(paths, 0, N("Pos(0, 1)"), gamma().subtypes()).empty());

    auto start = combinatorPaths(*gammaEx().find("start"));
    auto nullary = covers(start, 0, N("Pos(0, 2)"), gammaEx().subtypes());
    REQUIRE(nullary.size() == 1);
    CHECK(nullary[0].empty());
    CHECK(covers(start, 0, N("Pos(1, 2)"), gammaEx().subtypes()).empty());
}

TEST_CASE("cover sets match a brute-force subset search") {
    oracle::TypeGen gen(5);
    const Taxonomy taxonomy{{{"a", "b"}}};
    const auto closure = taxonomyClosure(taxonomy);
    const auto tax = oracle::closeTaxonomy(taxonomy);
    int nonempty = 0;
    for (int round = 0; round < 400; ++round) {
        std::vector<Type> parts;
        for (int i = 0; i < 3; ++i) parts.push_back(Type::arrow(gen.type(2), gen.type(2)));
        auto organized = organize(meet(parts));
        std::vector<Type> paths(organized.paths().begin(), organized.paths().end());
        if (paths.size() > 10) continue;
        auto target = organize(gen.type(3));
        if (target.empty()) continue;
        for (std::size_t k = 0; k <= 2; ++k) {
            CAPTURE(organized.text());
            CAPTURE(target.text());
            CAPTURE(k);
            auto got = coverSets(paths, k, target, closure);
            CHECK(got == bruteCovers(paths, k, target.toType(), tax));
            nonempty += !got.empty();
        }
    }
    CHECK(nonempty > 20);
}

TEST_CASE("reduceCovers keeps only maximal argument vectors") {
    const TaxonomyClosure tax;
    std::vector<ArgumentVector> in{{N("Pos(0, 0)")}, {N("Pos(0, omega)")}, {N("Pos(0, omega) & Pos(omega, 0)")}};
    auto out = reduceCovers(in, tax);
    REQUIRE(out.size() == 1);
    CHECK(out[0][0].text() == "Pos(0, omega)");
    std::vector<ArgumentVector> incomparable{{N("a"), N("b")}, {N("b"), N("a")}};
    CHECK(reduceCovers(incomparable, tax).size() == 2);
    std::vector<ArgumentVector> equivalent{{N("Pos(0, 0)")}, {N("Pos(0, omega) & Pos(omega, 0)")}};
    auto kept = reduceCovers(equivalent, tax);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0][0] == N("Pos(0, 0)"));
}

TEST_CASE("first goal: Pos(0, 1)") {
    auto trace = inhabit(gamma(), parseType("Pos(0, 1)"));
    CHECK(trace.steps.size() == 2);
    CHECK(ruleTexts(trace.final.rules()) ==
          std::vector<std::string>{
              "Pos(0, omega) & Pos(omega, 1) |-> down(Pos(0, omega) & Pos(omega, 0))",
              "Pos(0, omega) & Pos(omega, 0) |-> up(Pos(0, omega) & Pos(omega, 1))",
              "Pos(0, omega) & Pos(omega, 0) |-> start()",
          });
    CHECK(trace.pruned == trace.final);
    CHECK(trace.inhabited());

    auto s0 = replay(trace, 0);
    CHECK(s0.grammar.rules().empty());
    CHECK(s0.todo == std::vector<Nonterminal>{N("Pos(0, 1)")});
    auto s1 = replay(trace, 1);
    CHECK(s1.grammar.rules().size() == 1);
    CHECK(s1.todo == std::vector<Nonterminal>{N("Pos(0, 0)")});
    auto s2 = replay(trace, 2);
    CHECK(s2.grammar == trace.final);
    CHECK(s2.todo.empty());
    CHECK_THROWS_AS(replay(trace, 3), std::out_of_range);
}

TEST_CASE("second goal: Pos(2, 0)") {
    auto trace = inhabit(gamma(), parseType("Pos(2, 0)"));
    CHECK(trace.steps.size() == 3);
    CHECK(ruleTexts(trace.final.rules()) ==
          std::vector<std::string>{
              "Pos(2, omega) & Pos(omega, 0) |-> up(Pos(2, omega) & Pos(omega, 1))",
              "Pos(2, omega) & Pos(omega, 0) |-> left(Pos(3, omega) & Pos(omega, 0))",
              "Pos(2, omega) & Pos(omega, 1) |-> down(Pos(2, omega) & Pos(omega, 0))",
              "Pos(3, omega) & Pos(omega, 0) |-> right(Pos(2, omega) & Pos(omega, 0))",
          });
    CHECK(trace.pruned.rules().empty());
    CHECK(trace.pruned.start() == N("Pos(2, 0)"));
    CHECK_FALSE(trace.inhabited());
    for (const auto& s : trace.steps) CHECK_FALSE(s.failure);
}

TEST_CASE("third goal: Pos(4, 1)") {
    auto trace = inhabit(gamma(), parseType("Pos(4, 1)"));
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].failure == StepFailure::NoUsableCombinator);
    CHECK(trace.final.rules().empty());
    CHECK(replay(trace, 0).todo == std::vector<Nonterminal>{N("Pos(4, 1)")});
}

TEST_CASE("trace invariants") {
    for (const char* target : {"Pos(0, 1)", "Pos(2, 0)", "Pos(4, 1)"}) {
        CAPTURE(target);
        auto trace = inhabit(gamma(), parseType(target));
        std::set<std::string> processed, seen{trace.start().text()};
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& s = trace.steps[i];
            CHECK(s.index == i);
            CHECK(processed.insert(s.target.text()).second);
            std::vector<Nonterminal> fresh;
            for (const auto& r : s.rulesAdded) {
                CHECK(r.lhs == s.target);
                for (const auto& a : r.args) {
                    if (seen.insert(a.text()).second) fresh.push_back(a);
                }
            }
            CHECK(fresh == s.newTargets);
            CHECK(s.failure.has_value() == s.rulesAdded.empty());
        }
        CHECK(replay(trace, trace.steps.size()).grammar == trace.final);
        CHECK(trace.pruned == prune(trace.final));
        CHECK(inhabit(gamma(), parseType(target)) == trace);
    }
}

TEST_CASE("labyrinth of the introduction") {
    auto trace = inhabit(gammaEx(), parseType("Pos(1, 0)"));
    CHECK(trace.inhabited());
    auto terms = enumerateTerms(trace.pruned, trace.start(), 5);
    REQUIRE_FALSE(terms.empty());
    CHECK(terms[0].text() == "up(right(up(start)))");
}

TEST_CASE("schematic combinators and taxonomy") {
    auto repo = loadRepository(nlohmann::json::parse(R"~({"combinators": [
        {"name": "one", "type": "Int"},
        {"name": "id", "type": "a -> a", "variables": [{"name": "a", "domain": ["Int", "String"]}]},
        {"name": "show", "type": "Num -> String"}
    ], "taxonomy": [{"sub": "Int", "super": "Num"}]})~"));
    auto trace = inhabit(repo, parseType("String"));
    CHECK(ruleTexts(trace.final.rules()) == std::vector<std::string>{
                                                 "String |-> id(String)",
                                                 "String |-> show(Num)",
                                                 "Num |-> one()",
                                                 "Num |-> id(Int)",
                                                 "Int |-> one()",
                                                 "Int |-> id(Int)",
                                             });
    std::vector<std::string> texts;
    for (const auto& t : enumerateTerms(trace.pruned, trace.start(), 4)) texts.push_back(t.text());
    CHECK(texts == std::vector<std::string>{"show(one)", "id(show(one))", "show(id(one))", "id(id(show(one)))"});
}

TEST_CASE("rejected targets and timeouts") {
    CHECK_THROWS_AS(inhabit(gamma(), parseType("omega")), InvalidTargetError);
    CHECK_THROWS_AS(inhabit(gamma(), parseType("a -> omega")), InvalidTargetError);
    CHECK_THROWS_AS(inhabit(gamma(), parseType("x", {"x"})), InvalidTargetError);
    InhabitOptions expired;
    expired.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(inhabit(gamma(), parseType("Pos(0, 1)"), expired), InhabitationTimeout);
}

TEST_CASE("trace json") {
    auto doc = traceToJson(inhabit(gamma(), parseType("Pos(4, 1)")));
    CHECK(doc.dump() ==
          R"~({"steps":[{"index":0,"target":"Pos(4, omega) & Pos(omega, 1)","rules":[],"newTargets":[],"failure":"NoUsableCombinator"}],)~"
          R"~("final":{"start":"Pos(4, omega) & Pos(omega, 1)","rules":[]},)~"
          R"~("pruned":{"start":"Pos(4, omega) & Pos(omega, 1)","rules":[]}})~");
}

TEST_CASE("cover reduction keeps the language") {
    InhabitOptions raw;
    raw.reduceSubsumedCovers = false;
    for (const auto& [repo, target] : {std::pair{&gamma(), "Pos(0, 1)"}, std::pair{&gamma(), "Pos(2, 0)"},
                                       std::pair{&gammaEx(), "Pos(1, 0)"}, std::pair{&gammaEx(), "Pos(2, 3)"}}) {
        CAPTURE(target);
        auto reduced = inhabit(*repo, parseType(target));
        auto full = inhabit(*repo, parseType(target), raw);
        CHECK(full.final.rules().size() >= reduced.final.rules().size());
        auto a = enumerateTerms(reduced.pruned, reduced.start(), 100000, 11);
        auto b = enumerateTerms(full.pruned, full.start(), 100000, 11);
        CHECK(std::set<Term>(a.begin(), a.end()) == std::set<Term>(b.begin(), b.end()));
    }
    // without reduction the first goal gets a second down rule
    auto full = inhabit(gamma(), parseType("Pos(0, 1)"), raw);
    CHECK(full.final.rules().size() > 3);
}
