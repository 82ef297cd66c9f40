#pragma once

/**
 * Reference semantics of terms and formulas (Def. 4.4 and 4.6): terms are
 * evaluated structurally, atoms by membership, existentials by enumerating
 * the universe.
 */

#include <set>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"
#include "relkit/tuple.h"

namespace relkit {

/// M_α(t). Values outside the structure's domain count as Undefined.
/// Throws Error("UnboundVariable") when α misses a variable of t.
Applied evalTerm(const Term& term, const Structure& structure, const Assignment& alpha);

/// Same, against the function table only (no domain restriction).
Applied evalTerm(const Term& term, const FunctionTable& functions, const Assignment& alpha);

/// Truth of an atom, alternative or whole body under α. Atoms with an
/// undefined argument are false. Throws Error("NonEnumerableDomain") when an
/// existential has to range over a domain that cannot be enumerated.
bool satisfies(const Atom& atom, const Interpretation& I, const Structure& S, const Assignment& alpha);
bool satisfies(const Disjunct& disjunct, const Interpretation& I, const Structure& S,
               const Assignment& alpha);
bool satisfies(const std::vector<Disjunct>& body, const Interpretation& I, const Structure& S,
               const Assignment& alpha);

/// {α ∈ V → D | φ holds under α}, for V the given variables (which must
/// cover the free variables of φ). A closed formula yields {} or {{}}.
std::vector<Assignment> relationOf(const std::vector<Disjunct>& body,
                                   const std::vector<std::string>& variables,
                                   const Interpretation& I, const Structure& S);
std::vector<Assignment> relationOf(const Atom& atom, const std::vector<std::string>& variables,
                                   const Interpretation& I, const Structure& S);

}  // namespace relkit
