#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cls/debugger.hpp"
#include "cls/hypergraph.hpp"
#include "support/oracles.hpp"

using namespace cls;

namespace {

const Repository& gamma() {
    static const Repository r = loadRepositoryFile(CLS_DATA_DIR "/labyrinth_5x2.json");
    return r;
}

DebugTrace run(const char* target) { return inhabit(gamma(), parseType(target)); }

bool sameGraph(const Hypergraph& a, const Hypergraph& b) { return toJson(a) == toJson(b); }

}  // namespace

TEST_CASE("first goal graph") {
    auto h = fromGrammar(run("Pos(0, 1)").final, {});
    REQUIRE(h.nodes.size() == 2);
    REQUIRE(h.edges.size() == 3);
    CHECK(h.nodes[0].id == "n0");
    CHECK(h.nodes[0].type == "Pos(0, omega) & Pos(omega, 1)");
    CHECK(h.edges[2].label == "start");
    CHECK(h.edges[2].args.empty());
    for (const auto& e : h.edges) CHECK_FALSE(e.unproductive);
    for (const auto& n : h.nodes) CHECK(n.status == NodeStatus::Normal);
    CHECK(sameGraph(filterUnproductive(h), h));
    CHECK(toJson(h).dump() ==
          R"~({"nodes":[{"id":"n0","type":"Pos(0, omega) & Pos(omega, 1)","status":"normal"},)~"
          R"~({"id":"n1","type":"Pos(0, omega) & Pos(omega, 0)","status":"normal"}],"edges":[)~"
          R"~({"id":"e0","label":"down","result":"n0","args":[{"pos":1,"node":"n1"}],"unproductive":false},)~"
          R"~({"id":"e1","label":"up","result":"n1","args":[{"pos":1,"node":"n0"}],"unproductive":false},)~"
          R"~({"id":"e2","label":"start","result":"n1","args":[],"unproductive":false}]})~");
}

TEST_CASE("second goal graph") {
    auto h = fromGrammar(run("Pos(2, 0)").final, {});
    CHECK(h.nodes.size() == 3);
    REQUIRE(h.edges.size() == 4);
    for (const auto& e : h.edges) CHECK(e.unproductive);
    for (const auto& n : h.nodes) CHECK(n.status == NodeStatus::Unproductive);
    auto filtered = filterUnproductive(h);
    CHECK(filtered.edges.empty());
    REQUIRE(filtered.nodes.size() == 1);
    CHECK(filtered.nodes[0].type == "Pos(2, omega) & Pos(omega, 0)");
}

TEST_CASE("third goal step graph") {
    auto trace = run("Pos(4, 1)");
    auto h = stepGraph(trace, 0);
    REQUIRE(h.nodes.size() == 1);
    CHECK(h.nodes[0].status == NodeStatus::Todo);
    CHECK(h.nodes[0].type == "Pos(4, omega) & Pos(omega, 1)");
    CHECK(h.edges.empty());
    auto after = stepGraph(trace, 1);
    REQUIRE(after.nodes.size() == 1);
    CHECK(after.nodes[0].status == NodeStatus::Unproductive);
}

TEST_CASE("step graphs of the first goal") {
    auto trace = run("Pos(0, 1)");
    auto h = stepGraph(trace, 1);
    REQUIRE(h.nodes.size() == 2);
    REQUIRE(h.edges.size() == 1);
    CHECK(h.nodes[1].status == NodeStatus::Todo);
    CHECK(h.nodes[1].type == "Pos(0, omega) & Pos(omega, 0)");
    // a pending target does not make its parent unproductive
    CHECK(h.nodes[0].status == NodeStatus::Normal);
    CHECK_FALSE(h.edges[0].unproductive);
}

TEST_CASE("empty graph") {
    CHECK(toJson(Hypergraph{}).dump() == R"~({"nodes":[],"edges":[]})~");
}

TEST_CASE("json round-trip and validation") {
    for (const char* target : {"Pos(0, 1)", "Pos(2, 0)", "Pos(4, 1)"}) {
        auto trace = run(target);
        for (std::size_t k = 0; k <= trace.steps.size(); ++k) {
            auto h = stepGraph(trace, k);
            CHECK(sameGraph(hypergraphFromJson(nlohmann::json::parse(toJson(h).dump())), h));
        }
    }
    Hypergraph withSource = fromGrammar(run("Pos(0, 1)").final, {}, [](std::string_view name) {
        return std::optional<std::string>(std::string(name) + ".scala:1");
    });
    CHECK(withSource.edges[0].source == "down.scala:1");
    CHECK(sameGraph(hypergraphFromJson(nlohmann::json::parse(toJson(withSource).dump())), withSource));

    CHECK_THROWS_AS(hypergraphFromJson(nlohmann::json::parse(R"~({"nodes":[],"edges":[{"id":"e0","label":"f","result":"n9","args":[],"unproductive":false}]})~")), Error);
    CHECK_THROWS_AS(hypergraphFromJson(nlohmann::json::parse(R"~({"nodes":[{"id":"n0","type":"a","status":"odd"}],"edges":[]})~")), Error);
    CHECK_THROWS_AS(hypergraphFromJson(nlohmann::json::parse(R"~({"edges":[]})~")), Error);
}

TEST_CASE("unproductive edges are the ones prune removes") {
    oracle::GrammarGen gen(17);
    for (int round = 0; round < 200; ++round) {
        auto g = gen.grammar();
        auto h = fromGrammar(g, {});
        auto pruned = prune(g);
        const auto productive = productiveNonterminals(g);
        REQUIRE(h.edges.size() == g.rules().size());
        for (std::size_t i = 0; i < g.rules().size(); ++i) {
            const auto& r = g.rules()[i];
            bool survives = productive.contains(r.lhs);
            for (const auto& a : r.args) survives = survives && productive.contains(a);
            CHECK(h.edges[i].unproductive == !survives);
            if (pruned.containsRule(r)) CHECK_FALSE(h.edges[i].unproductive);
        }
        std::set<std::string> types;
        for (const auto& n : h.nodes) CHECK(types.insert(n.type).second);
        for (const auto& e : filterUnproductive(h).edges) CHECK_FALSE(e.unproductive);
    }
}

TEST_CASE("dot") {
    auto dot = toDot(fromGrammar(run("Pos(2, 0)").final, {}));
    CHECK(dot.rfind("digraph hypergraph {", 0) == 0);
    CHECK(dot.find("e0 [shape=box, label=\"up\", color=red]") != std::string::npos);
    CHECK(dot.find("e0 -> n1 [label=\"1\", color=red]") != std::string::npos);
    CHECK(toDot(stepGraph(run("Pos(4, 1)"), 0)).find("color=green") != std::string::npos);
}

TEST_CASE("reports") {
    CHECK(computeReport(run("Pos(0, 1)")).entries.empty());
    auto second = computeReport(run("Pos(2, 0)"));
    REQUIRE(second.entries.size() == 3);
    for (const auto& e : second.entries) CHECK(e.reason == UninhabitedReason::UnproductiveCycle);
    auto third = computeReport(run("Pos(4, 1)"));
    REQUIRE(third.entries.size() == 1);
    CHECK(third.entries[0].reason == UninhabitedReason::NoUsableCombinator);
    CHECK(reportToJson(third).dump() ==
          R"~({"entries":[{"type":"Pos(4, omega) & Pos(omega, 1)","reason":"NoUsableCombinator"}]})~");
}

TEST_CASE("result documents") {
    auto first = run("Pos(0, 1)");
    CHECK(resultDocument(first, true) == toJson(fromGrammar(first.final, {})));
    CHECK(resultDocument(first, false) == resultDocument(first, true));

    auto second = resultDocument(run("Pos(2, 0)"), true);
    CHECK(second["solution"] == false);
    CHECK(second["reason"] == "UnproductiveCycle");
    CHECK(second["message"].get<std::string>().find("Pos(2, omega) & Pos(omega, 0)") != std::string::npos);
    auto third = resultDocument(run("Pos(4, 1)"), false);
    CHECK(third["reason"] == "NoUsableCombinator");
    CHECK(resultDot(run("Pos(4, 1)"), true).find("digraph") != std::string::npos);

    // introduction labyrinth: the result keeps an unproductive detour unless filtered
    auto ex = inhabit(loadRepositoryFile(CLS_DATA_DIR "/labyrinth_3x4.json"), parseType("Pos(1, 0)"));
    auto full = hypergraphFromJson(resultDocument(ex, true));
    auto clean = hypergraphFromJson(resultDocument(ex, false));
    CHECK(sameGraph(clean, filterUnproductive(full)));
    CHECK(clean.edges.size() <= full.edges.size());

    CHECK(termsToJson({parseTerm("down(start)")}).dump() == R"~({"terms":["down(start)"]})~");
}
