#include "cls/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cls {

const HyperNode* Hypergraph::node(std::string_view id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

const char* statusName(NodeStatus s) {
    switch (s) {
    case NodeStatus::Normal:
        return "normal";
    case NodeStatus::Todo:
        return "todo";
    case NodeStatus::Unproductive:
        return "unproductive";
    }
    return "normal";
}

Hypergraph fromGrammar(const TreeGrammar& g, std::span<const Nonterminal> todo, const SourceLookup& sources) {
    const auto productive = productiveNonterminals(g, todo);
    std::set<std::string> open;
    for (const auto& t : todo) open.insert(t.text());

    Hypergraph h;
    std::map<std::string, std::string> ids;
    auto nodeFor = [&](const Nonterminal& nt) -> const std::string& {
        auto it = ids.find(nt.text());
        if (it != ids.end()) return it->second;
        HyperNode n{"n" + std::to_string(h.nodes.size()), nt.text(), NodeStatus::Normal};
        if (open.contains(nt.text())) {
            n.status = NodeStatus::Todo;
        } else if (!productive.contains(nt)) {
            n.status = NodeStatus::Unproductive;
        }
        h.nodes.push_back(n);
        return ids.emplace(nt.text(), n.id).first->second;
    };

    nodeFor(g.start());
    for (const auto& r : g.rules()) {
        Hyperedge e;
        e.id = "e" + std::to_string(h.edges.size());
        e.label = r.combinator;
        e.result = nodeFor(r.lhs);
        e.unproductive = !productive.contains(r.lhs);
        for (std::size_t i = 0; i < r.args.size(); ++i) {
            e.args.push_back({i + 1, nodeFor(r.args[i])});
            e.unproductive = e.unproductive || !productive.contains(r.args[i]);
        }
        if (sources) e.source = sources(r.combinator);
        h.edges.push_back(std::move(e));
    }
    for (const auto& nt : g.nonterminals()) nodeFor(nt);
    for (const auto& t : todo) nodeFor(t);
    return h;
}

Hypergraph filterUnproductive(const Hypergraph& h) {
    Hypergraph out;
    std::set<std::string> attached;
    for (const auto& e : h.edges) {
        if (e.unproductive) continue;
        attached.insert(e.result);
        for (const auto& a : e.args) attached.insert(a.node);
        out.edges.push_back(e);
    }
    // the first node is the start symbol and always stays
    for (const auto& n : h.nodes) {
        if (n.status == NodeStatus::Unproductive && !attached.contains(n.id) && &n != &h.nodes.front()) continue;
        out.nodes.push_back(n);
    }
    return out;
}

nlohmann::ordered_json toJson(const Hypergraph& h) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : h.nodes) {
        nlohmann::ordered_json node;
        node["id"] = n.id;
        node["type"] = n.type;
        node["status"] = statusName(n.status);
        nodes.push_back(std::move(node));
    }
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& e : h.edges) {
        nlohmann::ordered_json args = nlohmann::ordered_json::array();
        for (const auto& a : e.args) {
            nlohmann::ordered_json arg;
            arg["pos"] = a.pos;
            arg["node"] = a.node;
            args.push_back(std::move(arg));
        }
        nlohmann::ordered_json edge;
        edge["id"] = e.id;
        edge["label"] = e.label;
        edge["result"] = e.result;
        edge["args"] = std::move(args);
        edge["unproductive"] = e.unproductive;
        if (e.source) edge["source"] = *e.source;
        edges.push_back(std::move(edge));
    }
    nlohmann::ordered_json out;
    out["nodes"] = std::move(nodes);
    out["edges"] = std::move(edges);
    return out;
}

namespace {

NodeStatus parseStatus(const std::string& s) {
    if (s == "normal") return NodeStatus::Normal;
    if (s == "todo") return NodeStatus::Todo;
    if (s == "unproductive") return NodeStatus::Unproductive;
    throw Error("unknown node status '" + s + "'");
}

}  // namespace

Hypergraph hypergraphFromJson(const nlohmann::json& document) {
    Hypergraph h;
    try {
        for (const auto& n : document.at("nodes")) {
            h.nodes.push_back(
                {n.at("id").get<std::string>(), n.at("type").get<std::string>(), parseStatus(n.at("status").get<std::string>())});
        }
        std::set<std::string> known;
        for (const auto& n : h.nodes) {
            if (!known.insert(n.id).second) throw Error("duplicate node id '" + n.id + "'");
        }
        for (const auto& e : document.at("edges")) {
            Hyperedge edge;
            edge.id = e.at("id").get<std::string>();
            edge.label = e.at("label").get<std::string>();
            edge.result = e.at("result").get<std::string>();
            edge.unproductive = e.at("unproductive").get<bool>();
            for (const auto& a : e.at("args")) edge.args.push_back({a.at("pos").get<std::size_t>(), a.at("node").get<std::string>()});
            if (e.contains("source")) edge.source = e.at("source").get<std::string>();
            if (!known.contains(edge.result)) throw Error("edge '" + edge.id + "' refers to unknown node '" + edge.result + "'");
            for (const auto& a : edge.args) {
                if (!known.contains(a.node)) throw Error("edge '" + edge.id + "' refers to unknown node '" + a.node + "'");
            }
            h.edges.push_back(std::move(edge));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed hypergraph document: ") + e.what());
    }
    return h;
}

namespace {

std::string dotEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string toDot(const Hypergraph& h) {
    std::ostringstream out;
    out << "digraph hypergraph {\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    for (const auto& n : h.nodes) {
        out << "  " << n.id << " [shape=ellipse, label=\"" << dotEscape(n.type) << "\"";
        if (n.status == NodeStatus::Todo) out << ", color=green, style=bold";
        if (n.status == NodeStatus::Unproductive) out << ", color=red";
        out << "];\n";
    }
    for (const auto& e : h.edges) {
        const char* color = e.unproductive ? ", color=red" : "";
        out << "  " << e.id << " [shape=box, label=\"" << dotEscape(e.label) << "\"";
        if (e.source) out << ", tooltip=\"" << dotEscape(*e.source) << "\"";
        out << color << "];\n";
        out << "  " << e.result << " -> " << e.id << " [arrowhead=none" << color << "];\n";
        for (const auto& a : e.args) {
            out << "  " << e.id << " -> " << a.node << " [label=\"" << a.pos << "\"" << color << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace cls
