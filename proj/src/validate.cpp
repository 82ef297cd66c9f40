#include "relkit/ast.h"

namespace relkit {

std::set<std::string> freeVariables(const Term& term) {
    std::set<std::string> out;
    if (term.kind == Term::Kind::Variable) {
        out.insert(term.name);
        return out;
    }
    for (const auto& arg : term.args) out.merge(freeVariables(arg));
    return out;
}

std::set<std::string> freeVariables(const Atom& atom) {
    std::set<std::string> out;
    for (const auto& arg : atom.args) out.merge(freeVariables(arg));
    return out;
}

std::set<std::string> freeVariables(const Disjunct& disjunct) {
    std::set<std::string> out;
    for (const auto& atom : disjunct.conjuncts) out.merge(freeVariables(atom));
    for (const auto& e : disjunct.existentials) out.erase(e);
    return out;
}

std::set<std::string> freeVariables(const std::vector<Disjunct>& body) {
    std::set<std::string> out;
    for (const auto& d : body) out.merge(freeVariables(d));
    return out;
}

std::set<std::string> freeVariables(const Clause& clause) {
    std::set<std::string> out = freeVariables(clause.head);
    out.merge(freeVariables(clause.body));
    return out;
}

namespace {

class Validator {
public:
    explicit Validator(const Program& program) : program_(program), sig_(program.signature()) {}

    std::vector<Diagnostic> run() {
        for (const auto& clause : program_.clauses()) checkClause(clause);
        checkDuplicates();
        return std::move(diags_);
    }

private:
    void report(std::string code, std::string message, const std::string& predicate,
                const SourceSpan& span) {
        Diagnostic d{std::move(code), std::move(message), predicate, std::nullopt};
        if (span.valid()) d.span = span;
        diags_.push_back(std::move(d));
    }

    void checkTerm(const Term& term, const std::string& where) {
        switch (term.kind) {
            case Term::Kind::Variable:
                if (sig_.classOf(term.name)) {
                    report("SymbolUsedAsVariable",
                           "'" + term.name + "' is a declared symbol, not a variable", where,
                           term.span);
                }
                return;
            case Term::Kind::Constant:
                if (!sig_.isConstant(term.name))
                    report("UnknownSymbol", "undeclared constant '" + term.name + "'", where,
                           term.span);
                return;
            case Term::Kind::Application: {
                auto arity = sig_.functionArity(term.name);
                if (!arity) {
                    report("UnknownSymbol", "undeclared function '" + term.name + "'", where,
                           term.span);
                } else if (*arity != term.args.size()) {
                    report("ArityMismatch",
                           "function '" + term.name + "' expects " + std::to_string(*arity) +
                               " arguments, got " + std::to_string(term.args.size()),
                           where, term.span);
                }
                for (const auto& arg : term.args) checkTerm(arg, where);
                return;
            }
        }
    }

    void checkAtom(const Atom& atom, const std::string& where) {
        auto arity = sig_.predicateArity(atom.predicate);
        if (!arity) {
            report("UnknownPredicate", "undeclared predicate '" + atom.predicate + "'", where,
                   atom.span);
        } else if (*arity != atom.args.size()) {
            report("ArityMismatch",
                   "predicate '" + atom.predicate + "' expects " + std::to_string(*arity) +
                       " arguments, got " + std::to_string(atom.args.size()),
                   where, atom.span);
        }
        for (const auto& arg : atom.args) checkTerm(arg, where);
    }

    void checkClause(const Clause& clause) {
        const std::string& q = clause.head.predicate;
        if (Signature::isReservedPredicate(q)) {
            report("ReservedSymbol", "cannot define reserved predicate '" + q + "'", q,
                   clause.head.span);
        }
        checkAtom(clause.head, q);

        std::set<std::string> headVars;
        for (const auto& arg : clause.head.args) {
            if (!arg.isVariable()) {
                report("HeadArgumentNotVariable", "head arguments must be variables", q, arg.span);
                continue;
            }
            if (!headVars.insert(arg.name).second) {
                report("RepeatedHeadVariable",
                       "variable '" + arg.name + "' occurs more than once in the head", q,
                       arg.span);
            }
        }

        if (clause.body.empty()) report("EmptyBody", "clause body has no alternatives", q, clause.span);

        for (const auto& d : clause.body) {
            if (d.conjuncts.empty()) {
                report("EmptyConjunction", "alternative has no atoms", q, d.span);
            }
            std::set<std::string> seen;
            std::set<std::string> used;
            for (const auto& atom : d.conjuncts) used.merge(freeVariables(atom));
            for (const auto& e : d.existentials) {
                if (!seen.insert(e).second)
                    report("DuplicateExistential", "'" + e + "' quantified twice", q, d.span);
                if (headVars.contains(e))
                    report("ShadowedExistential",
                           "existential '" + e + "' shadows a head variable", q, d.span);
                if (!used.contains(e))
                    report("UnusedExistential", "existential '" + e + "' does not occur", q,
                           d.span);
                if (sig_.classOf(e))
                    report("SymbolUsedAsVariable", "'" + e + "' is a declared symbol", q, d.span);
            }
            for (const auto& atom : d.conjuncts) checkAtom(atom, q);
            for (const auto& v : freeVariables(d)) {
                if (!headVars.contains(v)) {
                    report("UnquantifiedBodyVariable",
                           "variable '" + v + "' is free in the body but not in the head", q,
                           d.span);
                }
            }
        }

        auto bodyVars = freeVariables(clause.body);
        for (const auto& v : headVars) {
            if (!bodyVars.contains(v)) {
                report("HeadVariableNotInBody",
                       "head variable '" + v + "' does not occur free in the body", q,
                       clause.head.span);
            }
        }
    }

    void checkDuplicates() {
        std::set<std::string> defined;
        for (const auto& clause : program_.clauses()) {
            if (!defined.insert(clause.head.predicate).second) {
                report("DuplicateClause", "predicate has more than one clause",
                       clause.head.predicate, clause.span);
            }
        }
    }

    const Program& program_;
    const Signature& sig_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& program) { return Validator(program).run(); }

}  // namespace relkit
