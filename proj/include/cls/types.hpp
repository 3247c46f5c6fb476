#ifndef CLS_TYPES_HPP
#define CLS_TYPES_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cls {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by parseType; `position` is the 0-based offset into the input.
class TypeSyntaxError : public Error {
public:
    TypeSyntaxError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t position_;
    std::string detail_;
};

class OpenTypeError : public Error {
public:
    using Error::Error;
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(std::string variable);
    const std::string& variable() const { return variable_; }

private:
    std::string variable_;
};

/*
 * Intersection types over named covariant constructors.
 *
 * A Type is an immutable tree shared by reference; copies are cheap. The
 * canonical printed form is computed once at construction and doubles as the
 * ordering key for organized paths.
 */
class Type {
public:
    enum class Kind { Constructor, Arrow, Intersection, Omega, Variable };

    Type();  // omega

    static Type omega();
    static Type variable(std::string name);
    static Type constructor(std::string name, std::vector<Type> args = {});
    static Type arrow(Type source, Type target);
    static Type intersection(Type left, Type right);
    // Left-nested intersection of `parts`; omega when empty.
    static Type intersectionOf(std::span<const Type> parts);

    Kind kind() const;
    bool isOmega() const { return kind() == Kind::Omega; }
    bool isArrow() const { return kind() == Kind::Arrow; }
    bool isConstructor() const { return kind() == Kind::Constructor; }
    bool isIntersection() const { return kind() == Kind::Intersection; }
    bool isVariable() const { return kind() == Kind::Variable; }

    // Constructor or variable name.
    const std::string& name() const;
    // Constructor arguments.
    std::span<const Type> args() const;
    const Type& source() const;
    const Type& target() const;
    const Type& left() const;
    const Type& right() const;

    bool isClosed() const;
    const std::string& text() const;

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

private:
    struct Node;
    explicit Type(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

std::string printType(const Type& t);

// Identifiers in `variables` parse as Variable, every other identifier as a
// constructor.
Type parseType(std::string_view text, const std::set<std::string>& variables = {});

/*
 * Paths are types of shape  s1 -> ... -> sk -> h  where h is a variable or a
 * constructor with at most one non-omega argument, itself a path. Sources
 * are kept verbatim.
 */
namespace path {
std::size_t arity(const Type& p);
// 0-based: arg(p, 0) is the first arrow source.
const Type& arg(const Type& p, std::size_t i);
// Drops the first k arrow sources.
const Type& tail(const Type& p, std::size_t k);
}  // namespace path

// Duplicate-free intersection of paths, sorted by printed text. Empty is omega.
class OrganizedType {
public:
    OrganizedType() = default;
    explicit OrganizedType(std::vector<Type> paths);

    std::span<const Type> paths() const { return paths_; }
    bool empty() const { return paths_.empty(); }
    std::size_t size() const { return paths_.size(); }

    Type toType() const;
    const std::string& text() const { return text_; }

    friend bool operator==(const OrganizedType& a, const OrganizedType& b);
    friend bool operator!=(const OrganizedType& a, const OrganizedType& b) { return !(a == b); }
    friend bool operator<(const OrganizedType& a, const OrganizedType& b) { return a.text_ < b.text_; }

private:
    std::vector<Type> paths_;
    std::string text_ = "omega";
};

OrganizedType organize(const Type& t);
OrganizedType unite(const OrganizedType& a, const OrganizedType& b);

using Substitution = std::map<std::string, Type>;

Type applySubstitution(const Substitution& s, const Type& t);

// Subtype pairs between constructor names.
struct Taxonomy {
    std::vector<std::pair<std::string, std::string>> edges;  // (sub, super)

    friend bool operator==(const Taxonomy&, const Taxonomy&) = default;
};

// Reflexive-transitive closure of a taxonomy.
class TaxonomyClosure {
public:
    TaxonomyClosure() = default;
    explicit TaxonomyClosure(const Taxonomy& taxonomy);

    bool operator()(std::string_view sub, std::string_view super) const;

private:
    std::unordered_map<std::string, std::unordered_set<std::string>> above_;
};

TaxonomyClosure taxonomyClosure(const Taxonomy& taxonomy);

bool subtype(const Type& s, const Type& t, const TaxonomyClosure& tax = {});
bool subtype(const OrganizedType& s, const OrganizedType& t, const TaxonomyClosure& tax = {});
// Whether the single path `q` is below the intersection of `paths`.
bool coveredBy(std::span<const Type> paths, const Type& q, const TaxonomyClosure& tax);

}  // namespace cls

#endif
