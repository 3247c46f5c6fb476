#include "cls/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cls {

std::string printRule(const Rule& rule) {
    std::string out = rule.lhs.text() + " |-> " + rule.combinator + "(";
    for (std::size_t i = 0; i < rule.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += rule.args[i].text();
    }
    return out + ")";
}

std::size_t Term::size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

std::string Term::text() const {
    if (children.empty()) return label;
    std::string out = label + "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i > 0) out += ", ";
        out += children[i].text();
    }
    return out + ")";
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse() {
        Term t = parseTerm();
        skipSpace();
        if (pos_ != text_.size()) throw Error("unexpected trailing input in term at position " + std::to_string(pos_));
        return t;
    }

private:
    Term parseTerm() {
        skipSpace();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_' ||
                text_[pos_] == '.' || text_[pos_] == '\'')) {
            ++pos_;
        }
        if (start == pos_) throw Error("expected a combinator name in term at position " + std::to_string(pos_));
        Term t{std::string(text_.substr(start, pos_ - start)), {}};
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            t.children.push_back(parseTerm());
            skipSpace();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                t.children.push_back(parseTerm());
                skipSpace();
            }
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                throw Error("expected ')' in term at position " + std::to_string(pos_));
            }
            ++pos_;
        }
        return t;
    }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string ruleKey(const Rule& rule) {
    std::string key = rule.lhs.text();
    key += '\0';
    key += rule.combinator;
    for (const auto& a : rule.args) {
        key += '\0';
        key += a.text();
    }
    return key;
}

}  // namespace

Term parseTerm(std::string_view text) { return TermParser(text).parse(); }

UnknownNonterminalError::UnknownNonterminalError(const Nonterminal& nt)
    : Error("unknown nonterminal '" + nt.text() + "'") {}

TreeGrammar::TreeGrammar(Nonterminal start) : start_(std::move(start)) { addNonterminal(start_); }

bool TreeGrammar::addNonterminal(const Nonterminal& nt) {
    if (!index_.emplace(nt.text(), nonterminals_.size()).second) return false;
    nonterminals_.push_back(nt);
    return true;
}

bool TreeGrammar::containsRule(const Rule& rule) const { return ruleKeys_.contains(ruleKey(rule)); }

bool TreeGrammar::addRule(Rule rule) {
    if (!ruleKeys_.insert(ruleKey(rule)).second) return false;
    addNonterminal(rule.lhs);
    for (const auto& a : rule.args) addNonterminal(a);
    terminals_.insert(rule.combinator);
    rules_.push_back(std::move(rule));
    return true;
}

std::vector<const Rule*> TreeGrammar::rulesFor(const Nonterminal& nt) const {
    std::vector<const Rule*> out;
    for (const auto& r : rules_) {
        if (r.lhs == nt) out.push_back(&r);
    }
    return out;
}

std::set<Nonterminal> productiveNonterminals(const TreeGrammar& g, std::span<const Nonterminal> assumeProductive) {
    std::set<Nonterminal> productive(assumeProductive.begin(), assumeProductive.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules()) {
            if (productive.contains(r.lhs)) continue;
            bool ready = std::all_of(r.args.begin(), r.args.end(),
                                     [&](const Nonterminal& a) { return productive.contains(a); });
            if (ready) {
                productive.insert(r.lhs);
                changed = true;
            }
        }
    }
    // Assumed nonterminals only count when they belong to g.
    for (auto it = productive.begin(); it != productive.end();) {
        it = g.contains(*it) ? std::next(it) : productive.erase(it);
    }
    return productive;
}

TreeGrammar prune(const TreeGrammar& g) {
    const auto productive = productiveNonterminals(g);
    std::vector<const Rule*> kept;
    for (const auto& r : g.rules()) {
        bool ok = productive.contains(r.lhs) &&
                  std::all_of(r.args.begin(), r.args.end(), [&](const Nonterminal& a) { return productive.contains(a); });
        if (ok) kept.push_back(&r);
    }

    std::set<Nonterminal> reachable{g.start()};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule* r : kept) {
            if (!reachable.contains(r->lhs)) continue;
            for (const auto& a : r->args) changed = reachable.insert(a).second || changed;
        }
    }

    TreeGrammar out(g.start());
    // Keep g's nonterminal order for the survivors.
    for (const auto& nt : g.nonterminals()) {
        if (reachable.contains(nt)) out.addNonterminal(nt);
    }
    for (const Rule* r : kept) {
        if (reachable.contains(r->lhs)) out.addRule(*r);
    }
    return out;
}

namespace {

class Enumerator {
public:
    Enumerator(const TreeGrammar& g, std::size_t cap) : cap_(cap) {
        const auto productive = productiveNonterminals(g);
        for (std::size_t i = 0; i < g.nonterminals().size(); ++i) ids_[g.nonterminals()[i].text()] = i;
        rules_.resize(g.nonterminals().size());
        for (const auto& r : g.rules()) {
            bool ok = productive.contains(r.lhs) &&
                      std::all_of(r.args.begin(), r.args.end(), [&](const Nonterminal& a) { return productive.contains(a); });
            if (!ok) continue;
            ProductiveRule pr{r.combinator, {}};
            for (const auto& a : r.args) pr.args.push_back(ids_.at(a.text()));
            rules_[ids_.at(r.lhs.text())].push_back(std::move(pr));
        }
        table_.resize(g.nonterminals().size());
    }

    std::size_t id(const Nonterminal& nt) const { return ids_.at(nt.text()); }

    // Size bound of L_nt when finite.
    std::optional<std::size_t> finiteBound(std::size_t nt) {
        std::vector<int> state(rules_.size(), 0);  // 0 new, 1 on stack, 2 done
        std::vector<std::size_t> longest(rules_.size(), 0);
        bool cyclic = false;
        std::function<void(std::size_t)> visit = [&](std::size_t n) {
            state[n] = 1;
            std::size_t best = 0;
            for (const auto& r : rules_[n]) {
                std::size_t total = 1;
                for (std::size_t a : r.args) {
                    if (state[a] == 1) {
                        cyclic = true;
                    } else if (state[a] == 0) {
                        visit(a);
                    }
                    total += longest[a];
                }
                best = std::max(best, total);
            }
            longest[n] = best;
            state[n] = 2;
        };
        visit(nt);
        if (cyclic) return std::nullopt;
        return longest[nt];
    }

    const std::vector<Term>& terms(std::size_t nt, std::size_t size) {
        auto& bySize = table_[nt];
        while (bySize.size() <= size) bySize.emplace_back();
        if (size == 0) return bySize[0];
        if (!isComputed(nt, size)) {
            Bucket out;
            for (const auto& r : rules_[nt]) {
                if (out.full(cap_)) break;
                if (r.args.empty()) {
                    if (size == 1) out.add(Term{r.label, {}});
                    continue;
                }
                if (size < 1 + r.args.size()) continue;
                std::vector<Term> children;
                fillChildren(r, 0, size - 1, children, out);
            }
            markComputed(nt, size);
            table_[nt][size] = std::move(out.terms);
        }
        return table_[nt][size];
    }

private:
    // Different rules can derive the same term; the language is a set.
    struct Bucket {
        std::vector<Term> terms;
        std::set<Term> seen;

        bool full(std::size_t cap) const { return terms.size() >= cap; }
        void add(Term t) {
            if (seen.insert(t).second) terms.push_back(std::move(t));
        }
    };

    struct ProductiveRule {
        std::string label;
        std::vector<std::size_t> args;
    };

    void fillChildren(const ProductiveRule& r, std::size_t i, std::size_t remaining, std::vector<Term>& children,
                      Bucket& out) {
        if (out.full(cap_)) return;
        const std::size_t left = r.args.size() - i - 1;  // children after this one
        if (left == 0) {
            for (const auto& t : terms(r.args[i], remaining)) {
                if (out.full(cap_)) return;
                children.push_back(t);
                out.add(Term{r.label, children});
                children.pop_back();
            }
            return;
        }
        for (std::size_t s = 1; s + left <= remaining; ++s) {
            // Copy: the recursive calls may grow the table.
            const std::vector<Term> here = terms(r.args[i], s);
            for (const auto& t : here) {
                if (out.full(cap_)) return;
                children.push_back(t);
                fillChildren(r, i + 1, remaining - s, children, out);
                children.pop_back();
            }
        }
    }

    bool isComputed(std::size_t nt, std::size_t size) const {
        return done_.contains({nt, size});
    }
    void markComputed(std::size_t nt, std::size_t size) { done_.insert({nt, size}); }

    std::size_t cap_;
    std::map<std::string, std::size_t> ids_;
    std::vector<std::vector<ProductiveRule>> rules_;
    std::vector<std::vector<std::vector<Term>>> table_;
    std::set<std::pair<std::size_t, std::size_t>> done_;
};

}  // namespace

std::vector<Term> enumerateTerms(const TreeGrammar& g, const Nonterminal& nt, std::size_t max, std::size_t maxSize) {
    if (!g.contains(nt)) throw UnknownNonterminalError(nt);
    std::vector<Term> out;
    if (max == 0) return out;
    Enumerator e(g, max);
    const std::size_t root = e.id(nt);
    const auto bound = e.finiteBound(root);
    const std::size_t limit = bound ? std::min(*bound, maxSize) : maxSize;
    if (bound && *bound == 0) return out;  // no productive rule
    for (std::size_t size = 1; size <= limit && out.size() < max; ++size) {
        for (const auto& t : e.terms(root, size)) {
            if (out.size() >= max) break;
            out.push_back(t);
        }
    }
    return out;
}

bool memberOf(const TreeGrammar& g, const Nonterminal& nt, const Term& t) {
    if (!g.contains(nt)) throw UnknownNonterminalError(nt);
    std::function<bool(const Nonterminal&, const Term&)> derive = [&](const Nonterminal& n, const Term& term) {
        for (const auto& r : g.rules()) {
            if (r.lhs != n || r.combinator != term.label || r.args.size() != term.children.size()) continue;
            bool ok = true;
            for (std::size_t i = 0; ok && i < r.args.size(); ++i) ok = derive(r.args[i], term.children[i]);
            if (ok) return true;
        }
        return false;
    };
    return derive(nt, t);
}

nlohmann::ordered_json ruleToJson(const Rule& rule) {
    nlohmann::ordered_json args = nlohmann::ordered_json::array();
    for (const auto& a : rule.args) args.push_back(a.text());
    nlohmann::ordered_json out;
    out["lhs"] = rule.lhs.text();
    out["combinator"] = rule.combinator;
    out["args"] = std::move(args);
    return out;
}

nlohmann::ordered_json grammarToJson(const TreeGrammar& g) {
    nlohmann::ordered_json rules = nlohmann::ordered_json::array();
    for (const auto& r : g.rules()) rules.push_back(ruleToJson(r));
    nlohmann::ordered_json out;
    out["start"] = g.start().text();
    out["rules"] = std::move(rules);
    return out;
}

}  // namespace cls
