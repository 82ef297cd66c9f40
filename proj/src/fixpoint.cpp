#include "relkit/fixpoint.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "compiled.h"
#include "relkit/errors.h"
#include "relkit/eval.h"
#include "relkit/parser.h"

namespace relkit {

using detail::CAtom;
using detail::CTerm;
using detail::Env;
using detail::Slots;

const char* statusName(FixpointStatus s) {
    switch (s) {
        case FixpointStatus::ReachedFixpoint: return "reachedFixpoint";
        case FixpointStatus::IterationBudgetExhausted: return "iterationBudgetExhausted";
        case FixpointStatus::SizeBudgetExhausted: return "sizeBudgetExhausted";
    }
    return "?";
}

bool DisjunctPlan::rangeRestricted() const {
    return std::none_of(steps.begin(), steps.end(),
                        [](const PlanStep& s) { return s.kind == PlanStep::Kind::Scan; });
}

namespace {

// ---------------------------------------------------------------------------
// Planning

bool matchable(const CTerm& t, const Env& env, const FunctionTable& functions) {
    switch (t.kind) {
        case CTerm::Kind::Var:
        case CTerm::Kind::Const: return true;
        case CTerm::Kind::App:
            if (env.allBound(t.vars)) return true;
            if (!functions.invertible(t.name)) return false;
            return std::all_of(t.args.begin(), t.args.end(),
                               [&](const CTerm& a) { return matchable(a, env, functions); });
    }
    return false;
}

std::size_t boundArgs(const CAtom& a, const Env& env) {
    std::size_t n = 0;
    for (const auto& t : a.args) n += env.allBound(t.vars);
    return n;
}

struct PreparedDisjunct {
    Slots slots;
    std::vector<CAtom> atoms;
    std::vector<int> headSlots;
    DisjunctPlan plan;
    std::vector<std::vector<int>> boundPositions;  // Generate: args already bound on entry
    std::vector<int> scanSlots;                    // Scan: slot to enumerate
};

std::vector<std::string> slotNames(const Slots& slots, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int s : ids) out.push_back(slots.name(s));
    return out;
}

PreparedDisjunct prepare(const Clause& clause, const Disjunct& d, const Structure& S,
                         const std::vector<bool>* boundHead) {
    PreparedDisjunct p;
    for (const auto& v : clause.headVariables()) p.headSlots.push_back(p.slots.of(v));
    for (const auto& a : d.conjuncts) p.atoms.push_back(detail::compileAtom(a, p.slots, S));
    for (const auto& e : d.existentials) p.slots.of(e);

    Env env(p.slots.size());
    if (boundHead) {
        for (std::size_t i = 0; i < p.headSlots.size() && i < boundHead->size(); ++i)
            if ((*boundHead)[i]) env.set(p.headSlots[i], Value());
    }
    std::vector<char> used(p.atoms.size(), 0);

    auto bindAll = [&](const std::vector<int>& vars) {
        std::vector<int> fresh;
        for (int s : vars) {
            if (!env.bound[s]) {
                env.set(s, Value());
                fresh.push_back(s);
            }
        }
        return fresh;
    };

    while (true) {
        std::optional<std::size_t> pick;
        PlanStep st;
        // 1. filters
        for (std::size_t i = 0; i < p.atoms.size() && !pick; ++i) {
            if (!used[i] && env.allBound(p.atoms[i].vars)) {
                pick = i;
                st.kind = PlanStep::Kind::Filter;
            }
        }
        // 2. solvable equations
        for (std::size_t i = 0; i < p.atoms.size() && !pick; ++i) {
            const CAtom& a = p.atoms[i];
            if (used[i] || a.kind != CAtom::Kind::Eq) continue;
            bool leftBound = env.allBound(a.args[0].vars);
            bool rightBound = env.allBound(a.args[1].vars);
            if (rightBound && matchable(a.args[0], env, S.functions)) {
                pick = i;
                st.solveLeftFromRight = true;
            } else if (leftBound && matchable(a.args[1], env, S.functions)) {
                pick = i;
                st.solveLeftFromRight = false;
            }
            if (pick) st.kind = PlanStep::Kind::Solve;
        }
        // 3. generators, most bound arguments first
        if (!pick) {
            std::size_t best = 0;
            for (std::size_t i = 0; i < p.atoms.size(); ++i) {
                const CAtom& a = p.atoms[i];
                if (used[i] || a.kind != CAtom::Kind::Stored) continue;
                bool ok = std::all_of(a.args.begin(), a.args.end(),
                                      [&](const CTerm& t) { return matchable(t, env, S.functions); });
                if (!ok) continue;
                std::size_t n = boundArgs(a, env);
                if (!pick || n > best) {
                    pick = i;
                    best = n;
                }
            }
            if (pick) st.kind = PlanStep::Kind::Generate;
        }
        if (pick) {
            st.conjunct = *pick;
            used[*pick] = 1;
            std::vector<int> positions;
            if (st.kind == PlanStep::Kind::Generate) {
                const CAtom& a = p.atoms[*pick];
                for (std::size_t k = 0; k < a.args.size(); ++k)
                    if (env.allBound(a.args[k].vars)) positions.push_back(static_cast<int>(k));
            }
            st.binds = slotNames(p.slots, bindAll(p.atoms[*pick].vars));
            p.plan.steps.push_back(st);
            p.boundPositions.push_back(std::move(positions));
            p.scanSlots.push_back(-1);
            continue;
        }
        // 4. nothing applies: enumerate the pending variable that readies the
        // most atoms, earliest occurrence on ties
        auto readied = [&](int s) {
            env.bound[s] = 1;
            int n = 0;
            for (std::size_t i = 0; i < p.atoms.size(); ++i) {
                if (used[i]) continue;
                const CAtom& a = p.atoms[i];
                if (env.allBound(a.vars)) {
                    ++n;
                } else if (a.kind == CAtom::Kind::Eq &&
                           ((env.allBound(a.args[1].vars) && matchable(a.args[0], env, S.functions)) ||
                            (env.allBound(a.args[0].vars) && matchable(a.args[1], env, S.functions)))) {
                    ++n;
                }
            }
            env.unset(s);
            return n;
        };
        int scan = -1;
        int bestReady = -1;
        for (std::size_t i = 0; i < p.atoms.size(); ++i) {
            if (used[i]) continue;
            for (int s : p.atoms[i].vars) {
                if (env.bound[s]) continue;
                int r = readied(s);
                if (r > bestReady) {
                    scan = s;
                    bestReady = r;
                }
            }
        }
        if (scan < 0) {
            for (int s : p.headSlots) {
                if (!env.bound[s]) {
                    scan = s;
                    break;
                }
            }
        }
        if (scan < 0) break;
        PlanStep st2;
        st2.kind = PlanStep::Kind::Scan;
        st2.variable = p.slots.name(scan);
        st2.binds = {st2.variable};
        env.set(scan, Value());
        p.plan.steps.push_back(st2);
        p.boundPositions.emplace_back();
        p.scanSlots.push_back(scan);
    }
    return p;
}

std::vector<PreparedDisjunct> prepareClause(const Clause& clause, const Structure& S,
                                            const std::vector<bool>* boundHead) {
    std::vector<PreparedDisjunct> out;
    for (const auto& d : clause.body) out.push_back(prepare(clause, d, S, boundHead));
    return out;
}

// ---------------------------------------------------------------------------
// Plan execution

bool match(const CTerm& pattern, const Value& v, Env& env, const Structure& S, std::vector<int>& trail) {
    switch (pattern.kind) {
        case CTerm::Kind::Var:
            if (env.bound[pattern.slot]) return env.values[pattern.slot] == v;
            if (!S.domain.contains(v)) return false;
            env.set(pattern.slot, v);
            trail.push_back(pattern.slot);
            return true;
        case CTerm::Kind::Const: return pattern.constant.defined() && pattern.constant.value == v;
        case CTerm::Kind::App: {
            if (!env.allBound(pattern.vars)) {
                auto args = S.functions.invert(pattern.name, pattern.args.size(), v);
                if (!args || args->size() != pattern.args.size()) return false;
                for (std::size_t i = 0; i < args->size(); ++i)
                    if (!match(pattern.args[i], (*args)[i], env, S, trail)) return false;
            }
            Applied r = detail::evalC(pattern, env, S);
            return r.defined() && r.value == v;
        }
    }
    return false;
}

void undo(Env& env, std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
        env.unset(trail.back());
        trail.pop_back();
    }
}

using Index = std::unordered_map<Tuple, std::vector<const Tuple*>, TupleHash>;

class BindingRunner {
public:
    BindingRunner(const Interpretation& I, const Structure& S) : I_(I), S_(S) {}

    void run(PreparedDisjunct& p, Relation& out) {
        p_ = &p;
        out_ = &out;
        env_ = Env(p.slots.size());
        trail_.clear();
        go(0);
    }

private:
    void go(std::size_t k) {
        const auto& steps = p_->plan.steps;
        if (k == steps.size()) {
            Tuple t;
            t.reserve(p_->headSlots.size());
            for (int s : p_->headSlots) t.push_back(env_.values[s]);
            out_->insert(std::move(t));
            return;
        }
        const PlanStep& st = steps[k];
        std::size_t mark = trail_.size();
        switch (st.kind) {
            case PlanStep::Kind::Filter:
                if (detail::holdsC(p_->atoms[st.conjunct], env_, I_, S_)) go(k + 1);
                return;
            case PlanStep::Kind::Solve: {
                const CAtom& a = p_->atoms[st.conjunct];
                const CTerm& known = st.solveLeftFromRight ? a.args[1] : a.args[0];
                const CTerm& pattern = st.solveLeftFromRight ? a.args[0] : a.args[1];
                Applied r = detail::evalC(known, env_, S_);
                if (r.defined() && match(pattern, r.value, env_, S_, trail_)) go(k + 1);
                undo(env_, trail_, mark);
                return;
            }
            case PlanStep::Kind::Scan: {
                int slot = p_->scanSlots[k];
                for (const auto& d : S_.domain.elements()) {
                    env_.set(slot, d);
                    go(k + 1);
                }
                env_.unset(slot);
                return;
            }
            case PlanStep::Kind::Generate: {
                const CAtom& a = p_->atoms[st.conjunct];
                const auto& positions = p_->boundPositions[k];
                auto consider = [&](const Tuple& t) {
                    bool ok = true;
                    for (std::size_t i = 0; i < a.args.size() && ok; ++i)
                        ok = match(a.args[i], t[i], env_, S_, trail_);
                    if (ok) go(k + 1);
                    undo(env_, trail_, mark);
                };
                const Relation& rel = I_.relation(a.predicate);
                if (positions.empty()) {
                    for (const auto& t : rel) consider(t);
                    return;
                }
                Tuple key;
                for (int pos : positions) {
                    Applied r = detail::evalC(a.args[pos], env_, S_);
                    if (!r.defined()) return;
                    key.push_back(std::move(r.value));
                }
                const Index& index = indexFor(a.predicate, positions, rel);
                auto it = index.find(key);
                if (it == index.end()) return;
                for (const Tuple* t : it->second) consider(*t);
                return;
            }
        }
    }

    const Index& indexFor(const std::string& pred, const std::vector<int>& positions, const Relation& rel) {
        std::string key = pred;
        for (int p : positions) key += "/" + std::to_string(p);
        auto [it, inserted] = indexes_.try_emplace(key);
        if (inserted) {
            for (const auto& t : rel) {
                Tuple k;
                for (int p : positions) k.push_back(t[p]);
                it->second[std::move(k)].push_back(&t);
            }
        }
        return it->second;
    }

    const Interpretation& I_;
    const Structure& S_;
    PreparedDisjunct* p_ = nullptr;
    Relation* out_ = nullptr;
    Env env_;
    std::vector<int> trail_;
    std::map<std::string, Index> indexes_;
};

Interpretation passThrough(const Program& program, const Interpretation& I) {
    Interpretation next = I;
    for (const auto& c : program.clauses()) next.relation(c.head.predicate).clear();
    return next;
}

std::string describeStep(const Disjunct& d, const PlanStep& st) {
    std::string s;
    switch (st.kind) {
        case PlanStep::Kind::Filter: s = "filter " + prettyPrint(d.conjuncts[st.conjunct]); break;
        case PlanStep::Kind::Solve: s = "solve " + prettyPrint(d.conjuncts[st.conjunct]); break;
        case PlanStep::Kind::Generate: s = "generate " + prettyPrint(d.conjuncts[st.conjunct]); break;
        case PlanStep::Kind::Scan: s = "scan " + st.variable; break;
    }
    if (!st.binds.empty() && st.kind != PlanStep::Kind::Scan) {
        s += " [binds ";
        for (std::size_t i = 0; i < st.binds.size(); ++i) s += (i ? ", " : "") + st.binds[i];
        s += "]";
    }
    return s;
}

}  // namespace

PlanOutcome planBindings(const Program& program, const Structure& structure,
                         const std::map<std::string, std::vector<bool>>* boundHead) {
    PlanOutcome out;
    for (const auto& clause : program.clauses()) {
        const std::vector<bool>* bound = nullptr;
        if (boundHead) {
            auto it = boundHead->find(clause.head.predicate);
            if (it != boundHead->end()) bound = &it->second;
        }
        BindingPlan plan;
        plan.predicate = clause.head.predicate;
        auto prepared = prepareClause(clause, structure, bound);
        for (std::size_t r = 0; r < prepared.size(); ++r) {
            for (const auto& st : prepared[r].plan.steps) {
                if (st.kind != PlanStep::Kind::Scan) continue;
                Diagnostic d{"NotRangeRestricted",
                             "variable '" + st.variable + "' in alternative " + std::to_string(r + 1) +
                                 " of '" + clause.head.predicate +
                                 "' is not bound by any generator or solvable equation",
                             clause.head.predicate, clause.body[r].span};
                if (!d.span->valid()) d.span = clause.span.valid() ? std::optional(clause.span) : std::nullopt;
                out.diagnostics.push_back(std::move(d));
            }
            plan.disjuncts.push_back(std::move(prepared[r].plan));
        }
        out.plans.emplace(clause.head.predicate, std::move(plan));
    }
    return out;
}

std::string formatPlan(const Program& program, const BindingPlan& plan) {
    const Clause* clause = program.clauseFor(plan.predicate);
    std::string out;
    for (std::size_t r = 0; r < plan.disjuncts.size(); ++r) {
        out += plan.predicate + " alt " + std::to_string(r + 1) + ":";
        const auto& steps = plan.disjuncts[r].steps;
        for (std::size_t k = 0; k < steps.size(); ++k) {
            out += k ? "; " : " ";
            out += describeStep(clause->body[r], steps[k]);
        }
        out += "\n";
    }
    return out;
}

Interpretation stepNaive(const Program& program, const Interpretation& I, const Structure& S) {
    Interpretation next = passThrough(program, I);
    for (const auto& clause : program.clauses()) {
        auto vars = clause.headVariables();
        Relation& rel = next.relation(clause.head.predicate);
        for (const auto& alpha : relationOf(clause.body, vars, I, S)) rel.insert(compose(alpha, vars));
    }
    return next;
}

Interpretation stepBinding(const Program& program, const Interpretation& I, const Structure& S) {
    Interpretation next = passThrough(program, I);
    BindingRunner runner(I, S);
    for (const auto& clause : program.clauses()) {
        auto prepared = prepareClause(clause, S, nullptr);
        Relation& rel = next.relation(clause.head.predicate);
        for (auto& p : prepared) {
            if (!S.domain.enumerable() && !p.plan.rangeRestricted()) {
                throw Error("NotRangeRestricted",
                            "an alternative of '" + clause.head.predicate +
                                "' needs to enumerate the domain '" + S.domain.describe() + "'");
            }
            runner.run(p, rel);
        }
    }
    return next;
}

Interpretation step(const Program& program, const Interpretation& I, const Structure& S, Evaluator e) {
    return e == Evaluator::Naive ? stepNaive(program, I, S) : stepBinding(program, I, S);
}

Interpretation bottomWith(const Program& program, const Structure& S, const Interpretation* extensional) {
    Interpretation I = Interpretation::bottom(program.signature(), S.functions);
    if (!extensional) return I;
    for (const auto& q : extensional->predicates()) {
        if (!I.has(q) || program.clauseFor(q)) continue;
        for (const auto& t : extensional->relation(q)) I.insert(q, t);
    }
    return I;
}

FixpointResult lfp(const Program& program, const Structure& S, const FixpointConfig& config,
                   const Interpretation* extensional) {
    if (config.maxIterations <= 0 || config.maxRelationSize == 0)
        throw Error("InvalidConfig", "fixpoint budgets must be positive");
    FixpointResult result;
    Interpretation I = bottomWith(program, S, extensional);
    for (int round = 1;; ++round) {
        Interpretation next = step(program, I, S, config.evaluator);
        std::map<std::string, std::size_t> deltas;
        std::size_t added = 0;
        bool tooBig = false;
        for (const auto& clause : program.clauses()) {
            const auto& q = clause.head.predicate;
            const Relation& before = I.relation(q);
            const Relation& after = next.relation(q);
            std::size_t fresh = 0;
            for (const auto& t : after) fresh += !before.contains(t);
            deltas[q] = fresh;
            added += fresh;
            tooBig = tooBig || after.size() > config.maxRelationSize;
            if (config.trace) {
                result.trace.push_back("round=" + std::to_string(round) + " pred=" + q +
                                       " new=" + std::to_string(fresh) +
                                       " total=" + std::to_string(after.size()));
            }
        }
        result.perRoundDeltas.push_back(std::move(deltas));
        result.iterations = round;
        I = std::move(next);
        if (added == 0) {
            result.status = FixpointStatus::ReachedFixpoint;
            break;
        }
        if (tooBig) {
            result.status = FixpointStatus::SizeBudgetExhausted;
            break;
        }
        if (round >= config.maxIterations) {
            result.status = FixpointStatus::IterationBudgetExhausted;
            break;
        }
    }
    result.interpretation = std::move(I);
    return result;
}

ModelCheck isModel(const Program& program, const Interpretation& I, const Structure& S) {
    for (const auto& clause : program.clauses()) {
        auto vars = clause.headVariables();
        const Relation& head = I.relation(clause.head.predicate);
        for (const auto& alpha : relationOf(clause.body, vars, I, S)) {
            if (!head.contains(compose(alpha, vars))) {
                return ModelCheck{false, ModelWitness{clause.head.predicate, alpha}};
            }
        }
    }
    return ModelCheck{};
}

bool checkModelFixpointEquivalence(const Program& program, const Interpretation& I, const Structure& S) {
    ModelCheck model = isModel(program, I, S);
    Interpretation stepped = stepNaive(program, I, S);
    bool contracted = leq(stepped, I);
    if (model.model != contracted) {
        std::string evidence = model.witness ? model.witness->predicate + " " +
                                                   formatAssignment(model.witness->alpha)
                                             : std::string("no witness");
        throw Error("TheoremViolation", std::string("isModel=") + (model.model ? "true" : "false") +
                                            " (" + evidence + ") but T_P(I) <= I is " +
                                            (contracted ? "true" : "false"));
    }
    return model.model;
}

}  // namespace relkit
