#pragma once

// Random inputs for property tests: small relational programs over
// D = {0..n-1} with s as bounded successor and < as a builtin, random
// interpretations, and random surface ASTs for parser round trips.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/errors.h"
#include "relkit/fixpoint.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"

namespace relkit::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Structure finiteNaturals(int n) {
    std::vector<Value> values;
    for (int i = 0; i < n; ++i) values.push_back(Value::integer(i));
    Structure S;
    S.domain = Domain::finite(values);
    S.functions.bindFunction("s", makeBuiltinFunction("succ", "s", 1));
    S.functions.bindRelation("<", Comparison::Less);
    return S;
}

struct RandomCase {
    Program program;
    Structure structure;
    Interpretation extensional;  // ⊥ plus random data for extensional predicates
    int n = 1;
};

struct ProgramShape {
    int maxDomain = 6;
    int maxIntensional = 3;
    int maxArity = 2;
    int maxDisjuncts = 3;
    int maxConjuncts = 3;
};

namespace detail {

struct ProgramBuilder {
    Rng& rng;
    int n;
    std::vector<std::pair<std::string, int>> preds;  // stored predicates

    Term randomTerm(const std::vector<std::string>& vars, int depth) {
        int r = pick(rng, 0, 9);
        if (depth > 0 && r == 0) return Term::apply("s", {randomTerm(vars, depth - 1)});
        if (r <= 2) return Term::constant(std::to_string(pick(rng, 0, n)));
        return Term::variable(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)]);
    }

    Atom randomAtom(const std::vector<std::string>& vars) {
        int r = pick(rng, 0, 19);
        if (r < 7) return Atom{"=", {randomTerm(vars, 2), randomTerm(vars, 2)}, {}};
        if (r < 10) return Atom{"<", {randomTerm(vars, 1), randomTerm(vars, 1)}, {}};
        if (r == 10) return Atom{"true", {}, {}};
        if (r == 11) return Atom{"false", {}, {}};
        const auto& [name, arity] = preds[pick(rng, 0, static_cast<int>(preds.size()) - 1)];
        Atom a{name, {}, {}};
        for (int i = 0; i < arity; ++i) a.args.push_back(randomTerm(vars, 1));
        return a;
    }
};

}  // namespace detail

/// A program that passes validate(); every head variable occurs in the body.
inline RandomCase randomCase(Rng& rng, const ProgramShape& shape = {}) {
    RandomCase rc;
    rc.n = pick(rng, 1, shape.maxDomain);
    detail::ProgramBuilder b{rng, rc.n, {}};

    Signature sig;
    sig.declareFunction("s", 1);
    sig.declarePredicate("<", 2);
    int intensional = pick(rng, 1, shape.maxIntensional);
    bool withExtensional = chance(rng, 0.5);
    for (int i = 0; i < intensional; ++i) {
        int arity = pick(rng, 0, shape.maxArity);
        b.preds.emplace_back("p" + std::to_string(i), arity);
        sig.declarePredicate(b.preds.back().first, arity);
    }
    if (withExtensional) {
        int arity = pick(rng, 1, shape.maxArity);
        b.preds.emplace_back("e0", arity);
        sig.declarePredicate("e0", arity);
    }
    Program program(sig);

    for (int i = 0; i < intensional; ++i) {
        const auto& [name, arity] = b.preds[i];
        Clause c;
        c.head.predicate = name;
        std::vector<std::string> headVars;
        for (int k = 0; k < arity; ++k) {
            headVars.push_back("x" + std::to_string(k));
            c.head.args.push_back(Term::variable(headVars.back()));
        }
        std::vector<std::string> pool = headVars;
        pool.push_back("y0");
        pool.push_back("y1");
        int disjuncts = pick(rng, 1, shape.maxDisjuncts);
        for (int d = 0; d < disjuncts; ++d) {
            Disjunct dj;
            int conj = pick(rng, 1, shape.maxConjuncts);
            for (int k = 0; k < conj; ++k) dj.conjuncts.push_back(b.randomAtom(pool));
            c.body.push_back(std::move(dj));
        }
        std::set<std::string> used = freeVariables(c.body);
        for (const auto& x : headVars) {
            if (used.contains(x)) continue;
            auto& dj = c.body[pick(rng, 0, disjuncts - 1)];
            if (chance(rng, 0.5))
                dj.conjuncts.push_back(Atom{"=", {Term::variable(x), Term::constant(std::to_string(pick(rng, 0, rc.n - 1)))}, {}});
            else
                dj.conjuncts.push_back(Atom{name, c.head.args, {}});
        }
        for (auto& dj : c.body) {
            for (const auto& v : freeVariables(dj))
                if (v[0] == 'y') dj.existentials.push_back(v);
        }
        program.addClause(std::move(c));
    }

    auto diags = validate(program);
    if (!diags.empty()) throw std::logic_error("generator produced invalid program: " + diags.front().toString());

    rc.structure = finiteNaturals(rc.n);
    rc.program = std::move(program);
    rc.extensional = Interpretation::bottom(rc.program.signature(), rc.structure.functions);
    if (withExtensional) {
        const auto& [name, arity] = b.preds.back();
        std::vector<int> idx(arity, 0);
        while (true) {
            if (chance(rng, 0.4)) {
                Tuple t;
                for (int v : idx) t.push_back(Value::integer(v));
                rc.extensional.insert(name, t);
            }
            int k = arity - 1;
            while (k >= 0 && ++idx[k] == rc.n) idx[k--] = 0;
            if (k < 0) break;
        }
    }
    return rc;
}

/// Every tuple of D^arity over the finite domain of S.
inline std::vector<Tuple> allTuples(const Structure& S, std::size_t arity) {
    const auto& elems = S.domain.elements();
    std::vector<Tuple> out{Tuple{}};
    for (std::size_t i = 0; i < arity; ++i) {
        std::vector<Tuple> next;
        for (const auto& t : out)
            for (const auto& v : elems) {
                Tuple u = t;
                u.push_back(v);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

/// Random relations for the clause-defined predicates; extensional ones are
/// copied from `base`.
inline Interpretation randomInterpretation(Rng& rng, const Program& program, const Structure& S,
                                           const Interpretation& base, double density) {
    Interpretation I = base;
    for (const auto& clause : program.clauses()) {
        const auto& q = clause.head.predicate;
        I.relation(q).clear();
        for (auto& t : allTuples(S, clause.head.args.size()))
            if (chance(rng, density)) I.insert(q, std::move(t));
    }
    return I;
}

/// I ∪ T(I) ∪ T(T(I)) ... from a random seed until T(I) ⪯ I: a model above the seed.
inline Interpretation randomModel(Rng& rng, const Program& program, const Structure& S,
                                  const Interpretation& base, double density) {
    Interpretation I = randomInterpretation(rng, program, S, base, density);
    while (true) {
        Interpretation next = stepBinding(program, I, S);
        if (leq(next, I)) return I;
        I = unite(I, next);
    }
}

// --- random surface ASTs -------------------------------------------------

/// Signature used by randomAst: symbolic constants, prefix and infix
/// functions, and predicates of arity 0..3 including infix comparisons.
inline Signature astSignature() {
    Signature sig;
    for (const char* c : {"nil", "a", "b"}) sig.declareConstant(c);
    sig.declareFunction("f", 1);
    sig.declareFunction("g", 2);
    sig.declareFunction("cons", 2);
    for (const char* op : {"+", "-", "*", "/"}) sig.declareFunction(op, 2);
    sig.declarePredicate("z", 0);
    sig.declarePredicate("p", 1);
    sig.declarePredicate("q", 2);
    sig.declarePredicate("r", 3);
    for (const char* op : {"<", "<=", ">", ">="}) sig.declarePredicate(op, 2);
    return sig;
}

namespace detail {

inline Term astTerm(Rng& rng, const std::vector<std::string>& vars, int depth) {
    int r = pick(rng, 0, depth > 0 ? 11 : 4);
    switch (r) {
        case 0:
        case 1: return Term::variable(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)]);
        case 2: {
            static const char* numerals[] = {"0", "1", "7", "42", "-3", "0.5", "2.25", "-1.5", "1000000001"};
            return Term::constant(numerals[pick(rng, 0, 8)]);
        }
        case 3: {
            static const char* consts[] = {"nil", "a", "b"};
            return Term::constant(consts[pick(rng, 0, 2)]);
        }
        case 4: return Term::variable(vars.front());
        case 5: return Term::apply("f", {astTerm(rng, vars, depth - 1)});
        case 6: return Term::apply(chance(rng, 0.5) ? "g" : "cons", {astTerm(rng, vars, depth - 1), astTerm(rng, vars, depth - 1)});
        default: {
            static const char* ops[] = {"+", "-", "*", "/"};
            return Term::apply(ops[pick(rng, 0, 3)], {astTerm(rng, vars, depth - 1), astTerm(rng, vars, depth - 1)});
        }
    }
}

inline Atom astAtom(Rng& rng, const std::vector<std::string>& vars) {
    int r = pick(rng, 0, 9);
    auto t = [&] { return astTerm(rng, vars, 3); };
    switch (r) {
        case 0: return Atom{"=", {t(), t()}, {}};
        case 1: return Atom{"z", {}, {}};
        case 2: return Atom{"p", {t()}, {}};
        case 3: return Atom{"q", {t(), t()}, {}};
        case 4: return Atom{"r", {t(), t(), t()}, {}};
        case 5: return Atom{chance(rng, 0.5) ? "true" : "false", {}, {}};
        default: {
            static const char* ops[] = {"<", "<=", ">", ">=", "="};
            return Atom{ops[pick(rng, 0, 4)], {t(), t()}, {}};
        }
    }
}

}  // namespace detail

/// A valid program over astSignature() with one to four clauses.
inline Program randomAst(Rng& rng) {
    Program program(astSignature());
    static const std::vector<std::pair<std::string, int>> heads = {{"z", 0}, {"p", 1}, {"q", 2}, {"r", 3}};
    std::vector<int> order = {0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    int clauses = pick(rng, 0, 4);
    for (int ci = 0; ci < clauses; ++ci) {
        const auto& [name, arity] = heads[order[ci]];
        Clause c;
        c.head.predicate = name;
        std::vector<std::string> headVars;
        static const char* names[] = {"x", "y", "w", "v0"};
        for (int k = 0; k < arity; ++k) {
            headVars.push_back(names[k]);
            c.head.args.push_back(Term::variable(names[k]));
        }
        int disjuncts = pick(rng, 1, 3);
        for (int d = 0; d < disjuncts; ++d) {
            Disjunct dj;
            std::vector<std::string> pool = headVars;
            pool.push_back("e");
            pool.push_back("u1");
            int conj = pick(rng, 1, 4);
            for (int k = 0; k < conj; ++k) dj.conjuncts.push_back(detail::astAtom(rng, pool));
            c.body.push_back(std::move(dj));
        }
        std::set<std::string> used = freeVariables(c.body);
        for (const auto& x : headVars)
            if (!used.contains(x)) c.body.front().conjuncts.push_back(Atom{"p", {Term::variable(x)}, {}});
        for (auto& dj : c.body)
            for (const auto& v : freeVariables(dj))
                if (v == "e" || v == "u1") dj.existentials.push_back(v);
        program.addClause(std::move(c));
    }
    auto diags = validate(program);
    if (!diags.empty()) throw std::logic_error("randomAst produced invalid program: " + diags.front().toString());
    return program;
}

}  // namespace relkit::testing
