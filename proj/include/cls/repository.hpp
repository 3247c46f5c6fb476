#ifndef CLS_REPOSITORY_HPP
#define CLS_REPOSITORY_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/types.hpp"

namespace cls {

// Collects every problem found in a repository document.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

struct VariableDomain {
    std::string name;
    std::vector<Type> domain;

    friend bool operator==(const VariableDomain&, const VariableDomain&) = default;
};

struct Combinator {
    std::string name;
    Type type;
    std::vector<VariableDomain> variables;
    // When present, replaces the product of the variable domains.
    std::optional<std::vector<Substitution>> explicitSubstitutions;
    std::optional<std::string> source;

    friend bool operator==(const Combinator&, const Combinator&) = default;
};

// Every instantiation of c's scheme, in declaration order of variables and
// listed order of domain values. A variable-free combinator yields one empty
// substitution.
std::vector<Substitution> substitutions(const Combinator& c);

class Repository {
public:
    Repository() = default;
    Repository(std::vector<Combinator> combinators, Taxonomy taxonomy);

    const std::vector<Combinator>& combinators() const { return combinators_; }
    const Taxonomy& taxonomy() const { return taxonomy_; }
    const TaxonomyClosure& subtypes() const { return closure_; }
    const Combinator* find(std::string_view name) const;

    // Non-fatal findings from loading, e.g. unused variables.
    const std::vector<std::string>& warnings() const { return warnings_; }

    friend bool operator==(const Repository& a, const Repository& b) {
        return a.combinators_ == b.combinators_ && a.taxonomy_ == b.taxonomy_;
    }

private:
    friend Repository loadRepository(const nlohmann::json& document);

    std::vector<Combinator> combinators_;
    Taxonomy taxonomy_;
    TaxonomyClosure closure_;
    std::vector<std::string> warnings_;
};

// Throws ValidationError listing all problems.
Repository loadRepository(const nlohmann::json& document);
Repository loadRepositoryFile(const std::string& path);
nlohmann::ordered_json printRepository(const Repository& repository);

}  // namespace cls

#endif
