#include "cls/repository.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace cls {

namespace {

std::string joinMessages(const std::vector<std::string>& messages) {
    std::string out = "invalid repository";
    for (const auto& m : messages) out += "\n  " + m;
    return out;
}

void collectVariables(const Type& t, std::vector<std::string>& out) {
    switch (t.kind()) {
    case Type::Kind::Variable:
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        break;
    case Type::Kind::Arrow:
        collectVariables(t.source(), out);
        collectVariables(t.target(), out);
        break;
    case Type::Kind::Intersection:
        collectVariables(t.left(), out);
        collectVariables(t.right(), out);
        break;
    case Type::Kind::Constructor:
        for (const auto& a : t.args()) collectVariables(a, out);
        break;
    case Type::Kind::Omega:
        break;
    }
}

bool isIdentifier(const std::string& s) {
    if (s.empty() || s == "omega") return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '\'';
    });
}

// Parses `text`, recording a message instead of throwing.
std::optional<Type> parseField(const std::string& text, const std::set<std::string>& variables,
                               const std::string& where, std::vector<std::string>& errors) {
    try {
        return parseType(text, variables);
    } catch (const TypeSyntaxError& e) {
        errors.push_back(where + ": malformed type at position " + std::to_string(e.position()) + ": " +
                         e.detail());
        return std::nullopt;
    }
}

const nlohmann::json* member(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> messages)
    : Error(joinMessages(messages)), messages_(std::move(messages)) {}

std::vector<Substitution> substitutions(const Combinator& c) {
    if (c.explicitSubstitutions) return *c.explicitSubstitutions;
    std::vector<Substitution> out{Substitution{}};
    for (const auto& var : c.variables) {
        std::vector<Substitution> next;
        next.reserve(out.size() * var.domain.size());
        for (const auto& partial : out) {
            for (const auto& value : var.domain) {
                Substitution s = partial;
                s.emplace(var.name, value);
                next.push_back(std::move(s));
            }
        }
        out = std::move(next);
    }
    return out;
}

Repository::Repository(std::vector<Combinator> combinators, Taxonomy taxonomy)
    : combinators_(std::move(combinators)), taxonomy_(std::move(taxonomy)), closure_(taxonomy_) {}

const Combinator* Repository::find(std::string_view name) const {
    for (const auto& c : combinators_) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

Repository loadRepository(const nlohmann::json& document) {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<Combinator> combinators;
    Taxonomy taxonomy;

    if (!document.is_object()) throw ValidationError({"repository document must be a JSON object"});

    if (const auto* list = member(document, "combinators")) {
        if (!list->is_array()) {
            errors.push_back("'combinators' must be an array");
        } else {
            std::set<std::string> seen;
            for (std::size_t index = 0; index < list->size(); ++index) {
                const auto& entry = (*list)[index];
                const std::string at = "combinators[" + std::to_string(index) + "]";
                if (!entry.is_object()) {
                    errors.push_back(at + ": must be an object");
                    continue;
                }
                const auto* name = member(entry, "name");
                const auto* type = member(entry, "type");
                if (!name || !name->is_string() || !isIdentifier(name->get<std::string>())) {
                    errors.push_back(at + ": 'name' must be an identifier string");
                    continue;
                }
                Combinator c;
                c.name = name->get<std::string>();
                const std::string where = "combinator '" + c.name + "'";
                if (!seen.insert(c.name).second) errors.push_back(where + ": duplicate combinator name");
                if (!type || !type->is_string()) {
                    errors.push_back(where + ": 'type' must be a string");
                    continue;
                }

                std::set<std::string> declared;
                if (const auto* vars = member(entry, "variables")) {
                    if (!vars->is_array()) {
                        errors.push_back(where + ": 'variables' must be an array");
                    } else {
                        for (const auto& v : *vars) {
                            const auto* vname = member(v, "name");
                            const auto* domain = member(v, "domain");
                            if (!v.is_object() || !vname || !vname->is_string() ||
                                !isIdentifier(vname->get<std::string>())) {
                                errors.push_back(where + ": variable entries need an identifier 'name'");
                                continue;
                            }
                            VariableDomain var{vname->get<std::string>(), {}};
                            if (!declared.insert(var.name).second) {
                                errors.push_back(where + ": variable '" + var.name + "' declared twice");
                            }
                            if (!domain || !domain->is_array() || domain->empty()) {
                                errors.push_back(where + ": variable '" + var.name +
                                                 "' needs a nonempty 'domain' array");
                                continue;
                            }
                            for (const auto& d : *domain) {
                                if (!d.is_string()) {
                                    errors.push_back(where + ": domain of '" + var.name + "' must hold strings");
                                    continue;
                                }
                                auto value = parseField(d.get<std::string>(), {},
                                                        where + ", domain of '" + var.name + "'", errors);
                                if (value) var.domain.push_back(*value);
                            }
                            c.variables.push_back(std::move(var));
                        }
                    }
                }

                if (const auto* subs = member(entry, "explicitSubstitutions")) {
                    if (!subs->is_array()) {
                        errors.push_back(where + ": 'explicitSubstitutions' must be an array");
                    } else {
                        for (const auto& s : *subs) {
                            if (!s.is_object()) continue;
                            for (const auto& [key, _] : s.items()) {
                                if (isIdentifier(key)) declared.insert(key);
                            }
                        }
                    }
                }

                auto scheme = parseField(type->get<std::string>(), declared, where, errors);
                if (!scheme) continue;
                c.type = *scheme;

                std::vector<std::string> used;
                collectVariables(c.type, used);
                const std::set<std::string> usedSet(used.begin(), used.end());
                for (const auto& var : c.variables) {
                    if (!usedSet.contains(var.name)) {
                        warnings.push_back(where + ": variable '" + var.name + "' is declared but unused");
                    }
                }

                if (const auto* subs = member(entry, "explicitSubstitutions"); subs && subs->is_array()) {
                    std::vector<Substitution> list;
                    for (std::size_t k = 0; k < subs->size(); ++k) {
                        const auto& s = (*subs)[k];
                        const std::string swhere = where + ", explicitSubstitutions[" + std::to_string(k) + "]";
                        if (!s.is_object()) {
                            errors.push_back(swhere + ": must be an object");
                            continue;
                        }
                        Substitution sub;
                        for (const auto& [key, value] : s.items()) {
                            if (!value.is_string()) {
                                errors.push_back(swhere + ": value of '" + key + "' must be a string");
                                continue;
                            }
                            auto t = parseField(value.get<std::string>(), {}, swhere, errors);
                            if (t) sub.emplace(key, *t);
                        }
                        for (const auto& v : used) {
                            if (!sub.contains(v)) errors.push_back(swhere + ": variable '" + v + "' is not bound");
                        }
                        list.push_back(std::move(sub));
                    }
                    c.explicitSubstitutions = std::move(list);
                } else {
                    for (const auto& v : used) {
                        if (!declared.contains(v)) {
                            errors.push_back(where + ": variable '" + v + "' is not declared");
                        }
                    }
                }

                if (const auto* source = member(entry, "source")) {
                    if (source->is_string()) {
                        c.source = source->get<std::string>();
                    } else {
                        errors.push_back(where + ": 'source' must be a string");
                    }
                }
                combinators.push_back(std::move(c));
            }
        }
    }

    if (const auto* tax = member(document, "taxonomy")) {
        if (!tax->is_array()) {
            errors.push_back("'taxonomy' must be an array");
        } else {
            for (std::size_t k = 0; k < tax->size(); ++k) {
                const auto& e = (*tax)[k];
                const auto* sub = e.is_object() ? member(e, "sub") : nullptr;
                const auto* super = e.is_object() ? member(e, "super") : nullptr;
                if (!sub || !super || !sub->is_string() || !super->is_string() ||
                    !isIdentifier(sub->get<std::string>()) || !isIdentifier(super->get<std::string>())) {
                    errors.push_back("taxonomy[" + std::to_string(k) + "]: needs identifier strings 'sub' and 'super'");
                    continue;
                }
                taxonomy.edges.emplace_back(sub->get<std::string>(), super->get<std::string>());
            }
        }
    }

    if (!errors.empty()) throw ValidationError(std::move(errors));
    Repository repo(std::move(combinators), std::move(taxonomy));
    repo.warnings_ = std::move(warnings);
    return repo;
}

Repository loadRepositoryFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open repository file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError({path + ": " + e.what()});
    }
    return loadRepository(doc);
}

nlohmann::ordered_json printRepository(const Repository& repository) {
    nlohmann::ordered_json combinators = nlohmann::ordered_json::array();
    for (const auto& c : repository.combinators()) {
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        entry["type"] = printType(c.type);
        if (!c.variables.empty()) {
            auto vars = nlohmann::ordered_json::array();
            for (const auto& v : c.variables) {
                auto domain = nlohmann::ordered_json::array();
                for (const auto& d : v.domain) domain.push_back(printType(d));
                vars.push_back({{"name", v.name}, {"domain", std::move(domain)}});
            }
            entry["variables"] = std::move(vars);
        }
        if (c.explicitSubstitutions) {
            auto subs = nlohmann::ordered_json::array();
            for (const auto& s : *c.explicitSubstitutions) {
                nlohmann::ordered_json obj = nlohmann::ordered_json::object();
                for (const auto& [k, v] : s) obj[k] = printType(v);
                subs.push_back(std::move(obj));
            }
            entry["explicitSubstitutions"] = std::move(subs);
        }
        if (c.source) entry["source"] = *c.source;
        combinators.push_back(std::move(entry));
    }
    nlohmann::ordered_json taxonomy = nlohmann::ordered_json::array();
    for (const auto& [sub, super] : repository.taxonomy().edges) {
        taxonomy.push_back({{"sub", sub}, {"super", super}});
    }
    nlohmann::ordered_json doc;
    doc["combinators"] = std::move(combinators);
    doc["taxonomy"] = std::move(taxonomy);
    return doc;
}

}  // namespace cls
