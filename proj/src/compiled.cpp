#include "compiled.h"

#include <algorithm>

#include "relkit/errors.h"

namespace relkit::detail {

int Slots::of(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
}

int Slots::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

namespace {

void addVars(std::vector<int>& into, const std::vector<int>& from) {
    for (int s : from)
        if (std::find(into.begin(), into.end(), s) == into.end()) into.push_back(s);
}

}  // namespace

CTerm compileTerm(const Term& term, Slots& slots, const Structure& structure) {
    CTerm c;
    c.name = term.name;
    switch (term.kind) {
        case Term::Kind::Variable:
            c.kind = CTerm::Kind::Var;
            c.slot = slots.of(term.name);
            c.vars.push_back(c.slot);
            break;
        case Term::Kind::Constant: {
            c.kind = CTerm::Kind::Const;
            c.constant = structure.functions.constant(term.name);
            if (c.constant.defined() && !structure.domain.contains(c.constant.value))
                c.constant = Applied::undefined();
            break;
        }
        case Term::Kind::Application:
            c.kind = CTerm::Kind::App;
            for (const auto& a : term.args) {
                c.args.push_back(compileTerm(a, slots, structure));
                addVars(c.vars, c.args.back().vars);
            }
            break;
    }
    return c;
}

CAtom compileAtom(const Atom& atom, Slots& slots, const Structure& structure) {
    CAtom c;
    c.predicate = atom.predicate;
    if (atom.predicate == "=") {
        c.kind = CAtom::Kind::Eq;
    } else if (atom.predicate == "true") {
        c.kind = CAtom::Kind::True;
    } else if (atom.predicate == "false") {
        c.kind = CAtom::Kind::False;
    } else if (auto cmp = structure.functions.relation(atom.predicate)) {
        c.kind = CAtom::Kind::Builtin;
        c.comparison = *cmp;
    } else {
        c.kind = CAtom::Kind::Stored;
    }
    for (const auto& a : atom.args) {
        c.args.push_back(compileTerm(a, slots, structure));
        addVars(c.vars, c.args.back().vars);
    }
    return c;
}

Applied evalC(const CTerm& term, const Env& env, const Structure& structure) {
    switch (term.kind) {
        case CTerm::Kind::Var: return Applied::ok(env.values[term.slot]);
        case CTerm::Kind::Const: return term.constant;
        case CTerm::Kind::App: {
            std::vector<Value> args;
            args.reserve(term.args.size());
            for (const auto& a : term.args) {
                Applied r = evalC(a, env, structure);
                if (!r.defined()) return r;
                args.push_back(std::move(r.value));
            }
            Applied r = structure.functions.apply(term.name, args);
            if (r.defined() && !structure.domain.contains(r.value)) return Applied::undefined();
            return r;
        }
    }
    return Applied::undefined();
}

bool holdsC(const CAtom& atom, const Env& env, const Interpretation& I, const Structure& structure) {
    switch (atom.kind) {
        case CAtom::Kind::True: return true;
        case CAtom::Kind::False: return false;
        case CAtom::Kind::Eq: {
            Applied a = evalC(atom.args[0], env, structure);
            if (!a.defined()) return false;
            Applied b = evalC(atom.args[1], env, structure);
            return b.defined() && a.value == b.value;
        }
        case CAtom::Kind::Builtin: {
            Applied a = evalC(atom.args[0], env, structure);
            if (!a.defined()) return false;
            Applied b = evalC(atom.args[1], env, structure);
            if (!b.defined()) return false;
            bool result = false;
            return compareWith(atom.comparison, a.value, b.value, result) == Applied::Status::Ok &&
                   result;
        }
        case CAtom::Kind::Stored: {
            Tuple t;
            t.reserve(atom.args.size());
            for (const auto& a : atom.args) {
                Applied r = evalC(a, env, structure);
                if (!r.defined()) return false;
                t.push_back(std::move(r.value));
            }
            return I.contains(atom.predicate, t);
        }
    }
    return false;
}

std::vector<int> enumerationOrder(const std::vector<CAtom>& atoms, const Env& env,
                                  const std::vector<int>& toBind) {
    std::vector<char> pending(env.bound.size(), 0);
    for (int s : toBind) pending[s] = 1;
    std::vector<int> order;
    std::vector<char> done(atoms.size(), 0);
    while (true) {
        int best = -1;
        std::size_t bestMissing = 0;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (done[i]) continue;
            std::size_t missing = 0;
            for (int s : atoms[i].vars) missing += pending[s];
            if (missing == 0) {
                done[i] = 1;
                continue;
            }
            if (best < 0 || missing < bestMissing) {
                best = static_cast<int>(i);
                bestMissing = missing;
            }
        }
        if (best < 0) break;
        for (int s : atoms[best].vars) {
            if (pending[s]) {
                pending[s] = 0;
                order.push_back(s);
            }
        }
        done[best] = 1;
    }
    for (int s : toBind)
        if (pending[s]) order.push_back(s);
    return order;
}

namespace {

struct Search {
    const std::vector<CAtom>& atoms;
    const std::vector<int>& order;
    Env& env;
    const Interpretation& I;
    const Structure& structure;
    const std::function<bool(const Env&)>& onSolution;
    std::vector<std::vector<int>> readyAt;  // readyAt[k]: atoms decided once order[0..k) are bound

    bool run(std::size_t depth) {
        for (int a : readyAt[depth])
            if (!holdsC(atoms[a], env, I, structure)) return true;
        if (depth == order.size()) return onSolution(env);
        int slot = order[depth];
        for (const auto& d : structure.domain.elements()) {
            env.set(slot, d);
            if (!run(depth + 1)) {
                env.unset(slot);
                return false;
            }
        }
        env.unset(slot);
        return true;
    }
};

}  // namespace

bool enumerateSolutions(const std::vector<CAtom>& atoms, const std::vector<int>& order, Env& env,
                        const Interpretation& I, const Structure& structure,
                        const std::function<bool(const Env&)>& onSolution) {
    Search search{atoms, order, env, I, structure, onSolution, {}};
    search.readyAt.resize(order.size() + 1);
    std::vector<int> position(env.bound.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = static_cast<int>(k);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        std::size_t at = 0;
        for (int s : atoms[i].vars) {
            if (position[s] >= 0) {
                at = std::max(at, static_cast<std::size_t>(position[s]) + 1);
            } else if (!env.bound[s]) {
                throw Error("UnboundVariable", "no value for variable in atom '" + atoms[i].predicate + "'");
            }
        }
        search.readyAt[at].push_back(static_cast<int>(i));
    }
    return search.run(0);
}

}  // namespace relkit::detail
