#ifndef CLS_HYPERGRAPH_HPP
#define CLS_HYPERGRAPH_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/grammar.hpp"

namespace cls {

enum class NodeStatus { Normal, Todo, Unproductive };

struct HyperNode {
    std::string id;
    std::string type;
    NodeStatus status = NodeStatus::Normal;

    friend bool operator==(const HyperNode&, const HyperNode&) = default;
};

struct Tentacle {
    std::size_t pos = 0;  // 1-based argument position
    std::string node;

    friend bool operator==(const Tentacle&, const Tentacle&) = default;
};

struct Hyperedge {
    std::string id;
    std::string label;
    std::string result;
    std::vector<Tentacle> args;
    bool unproductive = false;
    std::optional<std::string> source;

    friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Nonterminals are nodes; each rule lhs -> f(b1..bn) is an f-labelled edge
// from lhs to the ordered tentacles b1..bn.
struct Hypergraph {
    std::vector<HyperNode> nodes;
    std::vector<Hyperedge> edges;

    const HyperNode* node(std::string_view id) const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

using SourceLookup = std::function<std::optional<std::string>(std::string_view combinator)>;

// Productivity treats `todo` targets as still open, i.e. productive.
Hypergraph fromGrammar(const TreeGrammar& g, std::span<const Nonterminal> todo = {},
                       const SourceLookup& sources = {});

// Drops unproductive edges and the unproductive nodes they leave isolated.
// The first node (the start symbol) is kept.
Hypergraph filterUnproductive(const Hypergraph& h);

const char* statusName(NodeStatus s);

nlohmann::ordered_json toJson(const Hypergraph& h);
// Throws cls::Error on schema violations.
Hypergraph hypergraphFromJson(const nlohmann::json& document);
std::string toDot(const Hypergraph& h);

}  // namespace cls

#endif
