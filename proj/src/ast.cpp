#include "relkit/ast.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace relkit {

std::string SourceSpan::toString() const {
    std::ostringstream out;
    out << (file.empty() ? "<input>" : file) << ':' << startLine << ':' << startCol;
    return out.str();
}

std::string Diagnostic::toString() const {
    std::ostringstream out;
    if (span && span->valid()) out << span->toString() << ": ";
    out << "error[" << code << "]";
    if (!predicate.empty()) out << " in " << predicate;
    out << ": " << message;
    return out.str();
}

namespace {

const char* className(SymbolClass c) {
    switch (c) {
        case SymbolClass::Constant: return "constant";
        case SymbolClass::Function: return "function";
        case SymbolClass::Predicate: return "predicate";
    }
    return "symbol";
}

}  // namespace

Signature::Signature() {
    classes_.emplace("=", SymbolClass::Predicate);
    classes_.emplace("true", SymbolClass::Predicate);
    classes_.emplace("false", SymbolClass::Predicate);
}

bool Signature::isReservedPredicate(std::string_view name) {
    return name == "=" || name == "true" || name == "false";
}

bool Signature::isNumeral(std::string_view name) {
    if (name.empty()) return false;
    std::size_t i = 0;
    if (name[0] == '-') i = 1;
    if (i >= name.size() || !std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    bool dot = false;
    for (; i < name.size(); ++i) {
        char c = name[i];
        if (c == '.' && !dot) {
            dot = true;
            if (i + 1 >= name.size()) return false;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

namespace {

std::optional<Diagnostic> clash(const std::string& name, SymbolClass existing, SymbolClass wanted) {
    Diagnostic d;
    if (Signature::isReservedPredicate(name)) {
        d.code = "ReservedSymbol";
        d.message = "'" + name + "' is reserved and cannot be redeclared";
    } else if (existing == wanted) {
        d.code = "DuplicateDeclaration";
        d.message = std::string(className(wanted)) + " '" + name + "' declared twice";
    } else {
        d.code = "SymbolClassConflict";
        d.message = "'" + name + "' is already declared as a " + className(existing);
    }
    return d;
}

}  // namespace

std::optional<Diagnostic> Signature::declareConstant(const std::string& name) {
    if (isNumeral(name)) {
        return Diagnostic{"ReservedSymbol", "numerals are implicitly declared constants", "", {}};
    }
    if (auto it = classes_.find(name); it != classes_.end())
        return clash(name, it->second, SymbolClass::Constant);
    classes_.emplace(name, SymbolClass::Constant);
    constants_.push_back(name);
    return std::nullopt;
}

std::optional<Diagnostic> Signature::declareFunction(const std::string& name, std::size_t arity) {
    if (arity == 0) {
        return Diagnostic{"InvalidArity", "function '" + name + "' must have positive arity", "", {}};
    }
    if (isNumeral(name)) return Diagnostic{"ReservedSymbol", "numerals cannot name functions", "", {}};
    if (auto it = classes_.find(name); it != classes_.end())
        return clash(name, it->second, SymbolClass::Function);
    classes_.emplace(name, SymbolClass::Function);
    functions_.emplace_back(name, arity);
    return std::nullopt;
}

std::optional<Diagnostic> Signature::declarePredicate(const std::string& name, std::size_t arity) {
    if (isNumeral(name)) return Diagnostic{"ReservedSymbol", "numerals cannot name predicates", "", {}};
    if (auto it = classes_.find(name); it != classes_.end())
        return clash(name, it->second, SymbolClass::Predicate);
    classes_.emplace(name, SymbolClass::Predicate);
    predicates_.emplace_back(name, arity);
    return std::nullopt;
}

bool Signature::isConstant(std::string_view name) const {
    if (isNumeral(name)) return true;
    auto it = classes_.find(name);
    return it != classes_.end() && it->second == SymbolClass::Constant;
}

std::optional<std::size_t> Signature::functionArity(std::string_view name) const {
    for (const auto& [f, arity] : functions_)
        if (f == name) return arity;
    return std::nullopt;
}

std::optional<std::size_t> Signature::predicateArity(std::string_view name) const {
    if (name == "=") return 2;
    if (name == "true" || name == "false") return 0;
    for (const auto& [q, arity] : predicates_)
        if (q == name) return arity;
    return std::nullopt;
}

std::optional<SymbolClass> Signature::classOf(std::string_view name) const {
    if (isNumeral(name)) return SymbolClass::Constant;
    auto it = classes_.find(name);
    if (it == classes_.end()) return std::nullopt;
    return it->second;
}

bool operator==(const Signature& a, const Signature& b) {
    return a.constants_ == b.constants_ && a.functions_ == b.functions_ &&
           a.predicates_ == b.predicates_;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}

Term Term::constant(std::string name) {
    Term t;
    t.kind = Kind::Constant;
    t.name = std::move(name);
    return t;
}

Term Term::apply(std::string function, std::vector<Term> args) {
    Term t;
    t.kind = Kind::Application;
    t.name = std::move(function);
    t.args = std::move(args);
    return t;
}

bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
}

std::vector<std::string> Clause::headVariables() const {
    std::vector<std::string> names;
    names.reserve(head.args.size());
    for (const auto& arg : head.args) names.push_back(arg.name);
    return names;
}

const Clause* Program::clauseFor(std::string_view predicate) const {
    for (const auto& c : clauses_)
        if (c.head.predicate == predicate) return &c;
    return nullptr;
}

Term renameVariables(const Term& term, const std::map<std::string, std::string>& renaming) {
    Term out = term;
    if (term.kind == Term::Kind::Variable) {
        if (auto it = renaming.find(term.name); it != renaming.end()) out.name = it->second;
        return out;
    }
    for (auto& arg : out.args) arg = renameVariables(arg, renaming);
    return out;
}

namespace {

std::string freshName(const std::string& base, const std::set<std::string>& taken) {
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!taken.contains(candidate)) return candidate;
    }
}

}  // namespace

void Program::addClause(Clause clause) {
    auto it = std::find_if(clauses_.begin(), clauses_.end(), [&](const Clause& c) {
        return c.head.predicate == clause.head.predicate;
    });
    if (it == clauses_.end()) {
        clauses_.push_back(std::move(clause));
        return;
    }
    // Merging requires variable heads of equal arity; anything else is kept
    // as written so validation reports it against the first clause.
    bool mergeable = it->head.args.size() == clause.head.args.size();
    for (const auto& arg : it->head.args) mergeable = mergeable && arg.isVariable();
    for (const auto& arg : clause.head.args) mergeable = mergeable && arg.isVariable();
    if (!mergeable) {
        for (auto& d : clause.body) it->body.push_back(std::move(d));
        return;
    }

    std::map<std::string, std::string> headRenaming;
    for (std::size_t i = 0; i < clause.head.args.size(); ++i)
        headRenaming[clause.head.args[i].name] = it->head.args[i].name;
    std::set<std::string> targetNames;
    for (const auto& [from, to] : headRenaming) targetNames.insert(to);

    for (auto& d : clause.body) {
        std::set<std::string> taken = targetNames;
        for (const auto& atom : d.conjuncts)
            for (const auto& v : freeVariables(atom)) taken.insert(v);
        std::map<std::string, std::string> renaming = headRenaming;
        // Existentials bind their own names; rename any that would capture a
        // renamed head variable.
        for (auto& e : d.existentials) {
            renaming.erase(e);
            if (targetNames.contains(e)) {
                std::string fresh = freshName(e, taken);
                taken.insert(fresh);
                renaming[e] = fresh;
                e = fresh;
            }
        }
        for (auto& atom : d.conjuncts)
            for (auto& arg : atom.args) arg = renameVariables(arg, renaming);
        it->body.push_back(std::move(d));
    }
}

std::vector<std::string> Program::extensionalPredicates() const {
    std::vector<std::string> out;
    for (const auto& [q, arity] : signature_.predicates())
        if (!clauseFor(q)) out.push_back(q);
    return out;
}

}  // namespace relkit
