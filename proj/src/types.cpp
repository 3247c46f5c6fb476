#include "cls/types.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace cls {

TypeSyntaxError::TypeSyntaxError(std::size_t position, const std::string& message)
    : Error("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

UnboundVariableError::UnboundVariableError(std::string variable)
    : Error("unbound type variable '" + variable + "'"), variable_(std::move(variable)) {}

struct Type::Node {
    Kind kind;
    std::string name;
    std::vector<Type> children;
    bool closed = true;
    std::string text;
};

namespace {

bool needsParensAsArrowSource(const Type& t) { return t.isArrow(); }
bool needsParensAsLeftConjunct(const Type& t) { return t.isArrow(); }
bool needsParensAsRightConjunct(const Type& t) { return t.isArrow() || t.isIntersection(); }

std::string parenthesize(const Type& t, bool parens) {
    return parens ? "(" + t.text() + ")" : t.text();
}

}  // namespace

Type::Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Type::Type() : Type(omega()) {}

Type Type::omega() {
    static const std::shared_ptr<const Node> node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Omega;
        n->text = "omega";
        return n;
    }();
    return Type(node);
}

Type Type::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->closed = false;
    n->text = name;
    n->name = std::move(name);
    return Type(std::move(n));
}

Type Type::constructor(std::string name, std::vector<Type> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constructor;
    n->text = name;
    if (!args.empty()) {
        n->text += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i > 0) n->text += ", ";
            n->text += args[i].text();
            n->closed = n->closed && args[i].isClosed();
        }
        n->text += ')';
    }
    n->name = std::move(name);
    n->children = std::move(args);
    return Type(std::move(n));
}

Type Type::arrow(Type source, Type target) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Arrow;
    n->closed = source.isClosed() && target.isClosed();
    n->text = parenthesize(source, needsParensAsArrowSource(source)) + " -> " + target.text();
    n->children = {std::move(source), std::move(target)};
    return Type(std::move(n));
}

Type Type::intersection(Type left, Type right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Intersection;
    n->closed = left.isClosed() && right.isClosed();
    n->text = parenthesize(left, needsParensAsLeftConjunct(left)) + " & " +
              parenthesize(right, needsParensAsRightConjunct(right));
    n->children = {std::move(left), std::move(right)};
    return Type(std::move(n));
}

Type Type::intersectionOf(std::span<const Type> parts) {
    if (parts.empty()) return omega();
    Type result = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) result = intersection(result, parts[i]);
    return result;
}

Type::Kind Type::kind() const { return node_->kind; }
const std::string& Type::name() const { return node_->name; }
std::span<const Type> Type::args() const {
    if (node_->kind != Kind::Constructor) return {};
    return node_->children;
}
const Type& Type::source() const { return node_->children.at(0); }
const Type& Type::target() const { return node_->children.at(1); }
const Type& Type::left() const { return node_->children.at(0); }
const Type& Type::right() const { return node_->children.at(1); }
bool Type::isClosed() const { return node_->closed; }
const std::string& Type::text() const { return node_->text; }

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind || a.node_->text != b.node_->text) return false;
    if (a.node_->name != b.node_->name) return false;
    const auto& ac = a.node_->children;
    const auto& bc = b.node_->children;
    return ac.size() == bc.size() && std::equal(ac.begin(), ac.end(), bc.begin());
}

std::string printType(const Type& t) { return t.text(); }

// ---------------------------------------------------------------------------
// Parsing
//
//   Type  := Inter ('->' Type)?
//   Inter := Atom ('&' Atom)*
//   Atom  := 'omega' | ident ('(' Type (',' Type)* ')')? | '(' Type ')'

namespace {

bool isIdentChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '\'';
}

class TypeParser {
public:
    TypeParser(std::string_view text, const std::set<std::string>& variables)
        : text_(text), variables_(variables) {}

    Type parse() {
        Type t = parseArrow();
        skipSpace();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return t;
    }

private:
    Type parseArrow() {
        Type source = parseInter();
        skipSpace();
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return Type::arrow(std::move(source), parseArrow());
        }
        return source;
    }

    Type parseInter() {
        Type result = parseAtom();
        for (;;) {
            skipSpace();
            if (pos_ < text_.size() && text_[pos_] == '&') {
                ++pos_;
                result = Type::intersection(std::move(result), parseAtom());
            } else {
                return result;
            }
        }
    }

    Type parseAtom() {
        skipSpace();
        if (pos_ >= text_.size()) fail("unexpected end of input, expected a type");
        if (text_[pos_] == '(') {
            ++pos_;
            Type inner = parseArrow();
            expect(')');
            return inner;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
        if (start == pos_) {
            pos_ = start;
            fail("expected a type, found '" + std::string(1, text_[pos_]) + "'");
        }
        std::string ident(text_.substr(start, pos_ - start));
        if (ident == "omega") return Type::omega();
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            if (variables_.contains(ident)) fail("type variable '" + ident + "' cannot take arguments");
            ++pos_;
            std::vector<Type> args;
            args.push_back(parseArrow());
            skipSpace();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                args.push_back(parseArrow());
                skipSpace();
            }
            expect(')');
            return Type::constructor(std::move(ident), std::move(args));
        }
        if (variables_.contains(ident)) return Type::variable(std::move(ident));
        return Type::constructor(std::move(ident));
    }

    void expect(char c) {
        skipSpace();
        if (pos_ >= text_.size()) fail(std::string("unexpected end of input, expected '") + c + "'");
        if (text_[pos_] != c) fail(std::string("expected '") + c + "', found '" + text_[pos_] + "'");
        ++pos_;
    }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw TypeSyntaxError(pos_, message); }

    std::string_view text_;
    const std::set<std::string>& variables_;
    std::size_t pos_ = 0;
};

}  // namespace

Type parseType(std::string_view text, const std::set<std::string>& variables) {
    return TypeParser(text, variables).parse();
}

// ---------------------------------------------------------------------------
// Paths

namespace path {

std::size_t arity(const Type& p) {
    std::size_t k = 0;
    const Type* cur = &p;
    while (cur->isArrow()) {
        ++k;
        cur = &cur->target();
    }
    return k;
}

const Type& arg(const Type& p, std::size_t i) {
    const Type* cur = &p;
    for (std::size_t j = 0; j < i; ++j) cur = &cur->target();
    return cur->source();
}

const Type& tail(const Type& p, std::size_t k) {
    const Type* cur = &p;
    for (std::size_t j = 0; j < k; ++j) cur = &cur->target();
    return *cur;
}

}  // namespace path

// ---------------------------------------------------------------------------
// Organized form

OrganizedType::OrganizedType(std::vector<Type> paths) : paths_(std::move(paths)) {
    std::sort(paths_.begin(), paths_.end(),
              [](const Type& a, const Type& b) { return a.text() < b.text(); });
    paths_.erase(std::unique(paths_.begin(), paths_.end()), paths_.end());
    text_ = toType().text();
}

Type OrganizedType::toType() const { return Type::intersectionOf(paths_); }

bool operator==(const OrganizedType& a, const OrganizedType& b) {
    return a.text_ == b.text_ && a.paths_ == b.paths_;
}

namespace {

void organizeInto(const Type& t, std::vector<Type>& out) {
    switch (t.kind()) {
    case Type::Kind::Omega:
        return;
    case Type::Kind::Variable:
        out.push_back(t);
        return;
    case Type::Kind::Intersection:
        organizeInto(t.left(), out);
        organizeInto(t.right(), out);
        return;
    case Type::Kind::Arrow: {
        std::vector<Type> targets;
        organizeInto(t.target(), targets);
        for (auto& p : targets) out.push_back(Type::arrow(t.source(), std::move(p)));
        return;
    }
    case Type::Kind::Constructor: {
        const auto args = t.args();
        const std::size_t before = out.size();
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::vector<Type> inner;
            organizeInto(args[i], inner);
            for (auto& q : inner) {
                std::vector<Type> spread(args.size(), Type::omega());
                spread[i] = std::move(q);
                out.push_back(Type::constructor(t.name(), std::move(spread)));
            }
        }
        if (out.size() == before) {
            out.push_back(Type::constructor(t.name(), std::vector<Type>(args.size(), Type::omega())));
        }
        return;
    }
    }
}

}  // namespace

OrganizedType organize(const Type& t) {
    std::vector<Type> paths;
    organizeInto(t, paths);
    return OrganizedType(std::move(paths));
}

OrganizedType unite(const OrganizedType& a, const OrganizedType& b) {
    std::vector<Type> paths(a.paths().begin(), a.paths().end());
    paths.insert(paths.end(), b.paths().begin(), b.paths().end());
    return OrganizedType(std::move(paths));
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

Type substitute(const Substitution& s, const Type& t) {
    if (t.isClosed()) return t;
    switch (t.kind()) {
    case Type::Kind::Variable: {
        auto it = s.find(t.name());
        if (it == s.end()) throw UnboundVariableError(t.name());
        return it->second;
    }
    case Type::Kind::Arrow: {
        Type source = substitute(s, t.source());
        return Type::arrow(std::move(source), substitute(s, t.target()));
    }
    case Type::Kind::Intersection: {
        Type left = substitute(s, t.left());
        return Type::intersection(std::move(left), substitute(s, t.right()));
    }
    case Type::Kind::Constructor: {
        std::vector<Type> args;
        for (const auto& a : t.args()) args.push_back(substitute(s, a));
        return Type::constructor(t.name(), std::move(args));
    }
    case Type::Kind::Omega:
        break;
    }
    return t;
}

}  // namespace

Type applySubstitution(const Substitution& s, const Type& t) {
    for (const auto& [name, value] : s) {
        if (!value.isClosed()) throw OpenTypeError("substitution for '" + name + "' is not closed");
    }
    return substitute(s, t);
}

// ---------------------------------------------------------------------------
// Taxonomy

TaxonomyClosure::TaxonomyClosure(const Taxonomy& taxonomy) {
    std::unordered_map<std::string, std::vector<std::string>> direct;
    for (const auto& [sub, super] : taxonomy.edges) direct[sub].push_back(super);
    for (const auto& [name, _] : direct) {
        auto& reach = above_[name];
        std::deque<std::string> queue{name};
        while (!queue.empty()) {
            std::string cur = std::move(queue.front());
            queue.pop_front();
            auto it = direct.find(cur);
            if (it == direct.end()) continue;
            for (const auto& next : it->second) {
                if (reach.insert(next).second) queue.push_back(next);
            }
        }
    }
}

bool TaxonomyClosure::operator()(std::string_view sub, std::string_view super) const {
    if (sub == super) return true;
    auto it = above_.find(std::string(sub));
    return it != above_.end() && it->second.contains(std::string(super));
}

TaxonomyClosure taxonomyClosure(const Taxonomy& taxonomy) { return TaxonomyClosure(taxonomy); }

// ---------------------------------------------------------------------------
// Subtyping

bool coveredBy(std::span<const Type> paths, const Type& q, const TaxonomyClosure& tax) {
    switch (q.kind()) {
    case Type::Kind::Omega:
        return true;
    case Type::Kind::Intersection:
        return coveredBy(paths, q.left(), tax) && coveredBy(paths, q.right(), tax);
    case Type::Kind::Variable:
        throw OpenTypeError("subtyping is undefined on type variable '" + q.name() + "'");
    case Type::Kind::Constructor: {
        const auto qargs = q.args();
        // Same-head groups; all of a group's paths are used at once since
        // intersecting more arguments only strengthens the left side.
        std::map<std::string, std::vector<const Type*>> groups;
        for (const auto& p : paths) {
            if (p.isConstructor() && p.args().size() == qargs.size() && tax(p.name(), q.name())) {
                groups[p.name()].push_back(&p);
            }
        }
        for (const auto& [head, members] : groups) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < qargs.size(); ++i) {
                OrganizedType wanted = organize(qargs[i]);
                if (wanted.empty()) continue;
                std::vector<Type> have;
                for (const Type* p : members) {
                    OrganizedType part = organize(p->args()[i]);
                    have.insert(have.end(), part.paths().begin(), part.paths().end());
                }
                for (const auto& w : wanted.paths()) {
                    if (!coveredBy(have, w, tax)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        }
        return false;
    }
    case Type::Kind::Arrow: {
        OrganizedType wanted = organize(q.target());
        if (wanted.empty()) return true;
        const OrganizedType source = organize(q.source());
        std::vector<Type> targets;
        for (const auto& p : paths) {
            if (p.isArrow() && subtype(source, organize(p.source()), tax)) {
                OrganizedType part = organize(p.target());
                targets.insert(targets.end(), part.paths().begin(), part.paths().end());
            }
        }
        if (targets.empty()) return false;
        for (const auto& w : wanted.paths()) {
            if (!coveredBy(targets, w, tax)) return false;
        }
        return true;
    }
    }
    return false;
}

bool subtype(const OrganizedType& s, const OrganizedType& t, const TaxonomyClosure& tax) {
    for (const auto& q : t.paths()) {
        if (!coveredBy(s.paths(), q, tax)) return false;
    }
    return true;
}

bool subtype(const Type& s, const Type& t, const TaxonomyClosure& tax) {
    if (!s.isClosed() || !t.isClosed()) {
        throw OpenTypeError("subtyping is defined on closed types only: " + s.text() + " <= " + t.text());
    }
    return subtype(organize(s), organize(t), tax);
}

}  // namespace cls
