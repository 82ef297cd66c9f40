#pragma once

/**
 * Concrete syntax.
 *
 *   # comment
 *   const nil, a;                 constants (numerals are implicit)
 *   func s/1, cons/2, +/2;        function symbols; + - * / are infix
 *   pred even/1, odd/1, </2;      predicate symbols; = < <= > >= are infix
 *
 *   even(x) <- x = 0 \/ exists y. x = s(y) /\ odd(y);
 *
 * `/\` binds tighter than `\/`; `exists v1, v2.` scopes to the end of its
 * alternative; parentheses group alternatives. Several clauses for one
 * predicate are merged into a single disjunctive clause.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relkit/ast.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"

namespace relkit {

struct ParseOutcome {
    Program program;  // best effort even when diagnostics are present
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

/// Parses and validates. Never throws on malformed text.
ParseOutcome parseProgram(std::string_view text, const std::string& file = "");

/// Canonical text; parseProgram(prettyPrint(p)).program == p.
std::string prettyPrint(const Program& program);
std::string prettyPrint(const Term& term);
std::string prettyPrint(const Atom& atom);
std::string prettyPrint(const Disjunct& disjunct);

/// Parses a single atom such as `sort(cons(b,nil), W)`. Identifiers that are
/// not declared symbols are variables. Throws FormatError.
Atom parseAtom(std::string_view text, const Signature& signature);

/// Parses a conjunction of atoms `A /\ B /\ ...`. Throws FormatError.
std::vector<Atom> parseConjunction(std::string_view text, const Signature& signature);

/**
 * Reads `.rdata` text: statements `pred: (v0, ..., vk).` with ground values.
 * Identifiers must be declared constants and applications declared
 * functions; both are interpreted through the structure and must land in its
 * domain. Returns ⊥ of the signature plus the loaded tuples.
 * Throws FormatError (UnknownPredicate, ArityMismatch, UnknownConstant, ...).
 */
Interpretation parseRelationData(std::string_view text, const Signature& signature,
                                 const Structure& structure, const std::string& file = "");

}  // namespace relkit
