#include "relkit/eval.h"

#include <set>

#include "compiled.h"
#include "relkit/errors.h"

namespace relkit {

using detail::CAtom;
using detail::Env;
using detail::Slots;

namespace {

Applied evalWith(const Term& term, const FunctionTable& functions, const Domain* domain,
                 const Assignment& alpha) {
    switch (term.kind) {
        case Term::Kind::Variable: {
            auto it = alpha.find(term.name);
            if (it == alpha.end())
                throw Error("UnboundVariable", "no value for variable '" + term.name + "'");
            return Applied::ok(it->second);
        }
        case Term::Kind::Constant: {
            Applied r = functions.constant(term.name);
            if (r.defined() && domain && !domain->contains(r.value)) return Applied::undefined();
            return r;
        }
        case Term::Kind::Application: {
            std::vector<Value> args;
            std::optional<Applied> failed;
            for (const auto& a : term.args) {
                Applied r = evalWith(a, functions, domain, alpha);
                if (!r.defined()) {
                    // keep checking the remaining arguments for unbound variables
                    if (!failed) failed = r;
                    continue;
                }
                args.push_back(std::move(r.value));
            }
            if (failed) return *failed;
            Applied r = functions.apply(term.name, args);
            if (r.defined() && domain && !domain->contains(r.value)) return Applied::undefined();
            return r;
        }
    }
    return Applied::undefined();
}

void requireCovered(const std::set<std::string>& free, const Assignment& alpha) {
    for (const auto& v : free)
        if (!alpha.contains(v)) throw Error("UnboundVariable", "no value for variable '" + v + "'");
}

struct CompiledDisjunct {
    Slots slots;
    std::vector<CAtom> atoms;
};

CompiledDisjunct compile(const Disjunct& d, const Structure& S) {
    CompiledDisjunct c;
    for (const auto& a : d.conjuncts) c.atoms.push_back(detail::compileAtom(a, c.slots, S));
    return c;
}

}  // namespace

Applied evalTerm(const Term& term, const Structure& structure, const Assignment& alpha) {
    return evalWith(term, structure.functions, &structure.domain, alpha);
}

Applied evalTerm(const Term& term, const FunctionTable& functions, const Assignment& alpha) {
    return evalWith(term, functions, nullptr, alpha);
}

bool satisfies(const Atom& atom, const Interpretation& I, const Structure& S, const Assignment& alpha) {
    requireCovered(freeVariables(atom), alpha);
    Disjunct d;
    d.conjuncts.push_back(atom);
    return satisfies(d, I, S, alpha);
}

bool satisfies(const Disjunct& disjunct, const Interpretation& I, const Structure& S,
               const Assignment& alpha) {
    requireCovered(freeVariables(disjunct), alpha);
    CompiledDisjunct c = compile(disjunct, S);
    std::vector<int> toBind;
    for (const auto& e : disjunct.existentials) toBind.push_back(c.slots.of(e));
    Env env(c.slots.size());
    for (int s = 0; s < c.slots.size(); ++s) {
        auto it = alpha.find(c.slots.name(s));
        if (it != alpha.end()) env.set(s, it->second);
    }
    for (int s : toBind) env.unset(s);
    auto order = detail::enumerationOrder(c.atoms, env, toBind);
    bool found = false;
    detail::enumerateSolutions(c.atoms, order, env, I, S, [&](const Env&) {
        found = true;
        return false;
    });
    return found;
}

bool satisfies(const std::vector<Disjunct>& body, const Interpretation& I, const Structure& S,
               const Assignment& alpha) {
    requireCovered(freeVariables(body), alpha);
    for (const auto& d : body)
        if (satisfies(d, I, S, alpha)) return true;
    return false;
}

std::vector<Assignment> relationOf(const std::vector<Disjunct>& body,
                                   const std::vector<std::string>& variables,
                                   const Interpretation& I, const Structure& S) {
    {
        Assignment names;
        for (const auto& v : variables) names.emplace(v, Value());
        requireCovered(freeVariables(body), names);
    }
    std::set<Tuple, TupleLess> found;
    for (const auto& d : body) {
        CompiledDisjunct c = compile(d, S);
        std::vector<int> headSlots;
        for (const auto& v : variables) headSlots.push_back(c.slots.of(v));
        std::vector<int> toBind = headSlots;
        for (const auto& e : d.existentials) toBind.push_back(c.slots.of(e));
        Env env(c.slots.size());
        auto order = detail::enumerationOrder(c.atoms, env, toBind);
        detail::enumerateSolutions(c.atoms, order, env, I, S, [&](const Env& e) {
            Tuple t;
            t.reserve(headSlots.size());
            for (int s : headSlots) t.push_back(e.values[s]);
            found.insert(std::move(t));
            return true;
        });
    }
    std::vector<Assignment> out;
    out.reserve(found.size());
    for (const auto& t : found) out.push_back(reindex(t, variables));
    return out;
}

std::vector<Assignment> relationOf(const Atom& atom, const std::vector<std::string>& variables,
                                   const Interpretation& I, const Structure& S) {
    Disjunct d;
    d.conjuncts.push_back(atom);
    return relationOf(std::vector<Disjunct>{d}, variables, I, S);
}

}  // namespace relkit
