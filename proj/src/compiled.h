#pragma once

// Slot-indexed formulas shared by the reference evaluator and the fixpoint
// engines. Variables become slot numbers so inner loops avoid name lookups.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"

namespace relkit::detail {

class Slots {
public:
    int of(const std::string& name);
    int find(const std::string& name) const;
    const std::string& name(int slot) const { return names_[slot]; }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
};

struct CTerm {
    enum class Kind { Var, Const, App };
    Kind kind = Kind::Var;
    int slot = -1;
    Applied constant;  // Const: value under the structure, or undefined
    std::string name;  // constant or function symbol
    std::vector<CTerm> args;
    std::vector<int> vars;  // distinct slots occurring in the term
};

struct CAtom {
    enum class Kind { Eq, True, False, Builtin, Stored };
    Kind kind = Kind::Stored;
    Comparison comparison = Comparison::Less;
    std::string predicate;
    std::vector<CTerm> args;
    std::vector<int> vars;
};

struct Env {
    std::vector<Value> values;
    std::vector<char> bound;

    explicit Env(int n = 0) : values(n), bound(n, 0) {}
    void grow(int n) {
        if (static_cast<int>(values.size()) < n) {
            values.resize(n);
            bound.resize(n, 0);
        }
    }
    void set(int slot, Value v) {
        values[slot] = std::move(v);
        bound[slot] = 1;
    }
    void unset(int slot) { bound[slot] = 0; }
    bool allBound(const std::vector<int>& slots) const {
        for (int s : slots)
            if (!bound[s]) return false;
        return true;
    }
};

CTerm compileTerm(const Term& term, Slots& slots, const Structure& structure);
CAtom compileAtom(const Atom& atom, Slots& slots, const Structure& structure);

/// Evaluates a term whose variables are all bound. Applications whose
/// result leaves the domain are undefined.
Applied evalC(const CTerm& term, const Env& env, const Structure& structure);

/// Truth of an atom whose variables are all bound.
bool holdsC(const CAtom& atom, const Env& env, const Interpretation& I, const Structure& structure);

/// Binding order for `toBind`: repeatedly completes the atom with the
/// fewest unbound variables, so filters apply as early as possible.
std::vector<int> enumerationOrder(const std::vector<CAtom>& atoms, const Env& env,
                                  const std::vector<int>& toBind);

/// Enumerates values of D for the slots in `order` (in that order), checking
/// each atom as soon as its variables are bound. `onSolution` returns false
/// to stop; the function returns false if it was stopped.
bool enumerateSolutions(const std::vector<CAtom>& atoms, const std::vector<int>& order, Env& env,
                        const Interpretation& I, const Structure& structure,
                        const std::function<bool(const Env&)>& onSolution);

}  // namespace relkit::detail
