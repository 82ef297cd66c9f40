#pragma once

/**
 * Abstract syntax of relational programs.
 *
 * A program is a conjunction of universally closed implications, one per
 * defined predicate q:
 *
 *     forall x0..xk. q(x0, ..., xk) <- B_q0 \/ ... \/ B_qn
 *
 * where each alternative B_qr is an existentially quantified conjunction of
 * atoms. Heads carry distinct variables only. Predicates without a clause are
 * extensional: their relation is supplied by the interpretation.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace relkit {

struct SourceSpan {
    std::string file;
    int startLine = 0;
    int startCol = 0;
    int endLine = 0;
    int endCol = 0;

    bool valid() const { return startLine > 0; }
    std::string toString() const;
};

struct Diagnostic {
    std::string code;       // machine-readable, e.g. "RepeatedHeadVariable"
    std::string message;
    std::string predicate;  // offending clause/predicate, empty if none
    std::optional<SourceSpan> span;

    std::string toString() const;
};

enum class SymbolClass { Constant, Function, Predicate };

/**
 * Constants, function symbols and predicate symbols of a program, kept in
 * declaration order. Numeric literals are implicitly declared constants and
 * are never stored. "=", "true" and "false" are always present.
 */
class Signature {
public:
    Signature();

    /// Adds a symbol; returns a diagnostic code when the declaration clashes.
    std::optional<Diagnostic> declareConstant(const std::string& name);
    std::optional<Diagnostic> declareFunction(const std::string& name, std::size_t arity);
    std::optional<Diagnostic> declarePredicate(const std::string& name, std::size_t arity);

    bool isConstant(std::string_view name) const;
    std::optional<std::size_t> functionArity(std::string_view name) const;
    std::optional<std::size_t> predicateArity(std::string_view name) const;
    std::optional<SymbolClass> classOf(std::string_view name) const;

    /// Declared constants, excluding numerals.
    const std::vector<std::string>& constants() const { return constants_; }
    const std::vector<std::pair<std::string, std::size_t>>& functions() const { return functions_; }
    /// User predicates, excluding the reserved "=", "true" and "false".
    const std::vector<std::pair<std::string, std::size_t>>& predicates() const { return predicates_; }

    static bool isReservedPredicate(std::string_view name);
    static bool isNumeral(std::string_view name);

    friend bool operator==(const Signature& a, const Signature& b);

private:
    std::vector<std::string> constants_;
    std::vector<std::pair<std::string, std::size_t>> functions_;
    std::vector<std::pair<std::string, std::size_t>> predicates_;
    std::map<std::string, SymbolClass, std::less<>> classes_;
};

struct Term {
    enum class Kind { Variable, Constant, Application };

    Kind kind = Kind::Variable;
    std::string name;        // variable name, constant symbol or function symbol
    std::vector<Term> args;  // Application only
    SourceSpan span;

    static Term variable(std::string name);
    static Term constant(std::string name);
    static Term apply(std::string function, std::vector<Term> args);

    bool isVariable() const { return kind == Kind::Variable; }

    /// Structural equality; spans are ignored.
    friend bool operator==(const Term& a, const Term& b);
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;  // indexed by {0, ..., |q|-1}
    SourceSpan span;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
};

struct Disjunct {
    std::vector<std::string> existentials;
    std::vector<Atom> conjuncts;
    SourceSpan span;

    friend bool operator==(const Disjunct& a, const Disjunct& b) {
        return a.existentials == b.existentials && a.conjuncts == b.conjuncts;
    }
};

struct Clause {
    Atom head;
    std::vector<Disjunct> body;
    SourceSpan span;

    /// Head argument names, in position order. Requires variable-only heads.
    std::vector<std::string> headVariables() const;

    friend bool operator==(const Clause& a, const Clause& b) {
        return a.head == b.head && a.body == b.body;
    }
};

class Program {
public:
    Program() = default;
    explicit Program(Signature signature) : signature_(std::move(signature)) {}

    const Signature& signature() const { return signature_; }
    Signature& signature() { return signature_; }

    /// Clauses in definition order, at most one per predicate.
    const std::vector<Clause>& clauses() const { return clauses_; }

    const Clause* clauseFor(std::string_view predicate) const;

    /// Adds a clause. When the predicate already has one, the new body's
    /// alternatives are appended after renaming its head variables to the
    /// existing clause's names.
    void addClause(Clause clause);

    /// Declared predicates that have no clause, in declaration order.
    std::vector<std::string> extensionalPredicates() const;

    friend bool operator==(const Program& a, const Program& b) {
        return a.signature_ == b.signature_ && a.clauses_ == b.clauses_;
    }

private:
    Signature signature_;
    std::vector<Clause> clauses_;
};

/// Structural validation of a program. Empty result means well-formed.
std::vector<Diagnostic> validate(const Program& program);

std::set<std::string> freeVariables(const Term& term);
std::set<std::string> freeVariables(const Atom& atom);
std::set<std::string> freeVariables(const Disjunct& disjunct);
std::set<std::string> freeVariables(const std::vector<Disjunct>& body);
/// Free variables of the closed-over implication's matrix: head and body.
std::set<std::string> freeVariables(const Clause& clause);

/// Renames free occurrences of variables in a term.
Term renameVariables(const Term& term, const std::map<std::string, std::string>& renaming);

}  // namespace relkit
