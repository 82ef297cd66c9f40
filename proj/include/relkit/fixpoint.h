#pragma once

/**
 * The immediate-consequence operator T_P (Def. 5.1), iteration from ⊥ to the
 * least fixpoint (Lemma 5.3) and model checking (Lemma 4.1, Theorem 5.2).
 *
 * Two implementations of one step are provided. stepNaive follows the
 * definition literally: every tuple of D^|q| is tried against the body.
 * stepBinding runs a join plan that draws values from relations and solves
 * equations, so it also works on domains that cannot be enumerated.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"
#include "relkit/tuple.h"

namespace relkit {

enum class Evaluator { Naive, Binding };

struct FixpointConfig {
    int maxIterations = 1000;
    std::size_t maxRelationSize = 1'000'000;
    Evaluator evaluator = Evaluator::Binding;
    bool trace = false;
};

enum class FixpointStatus { ReachedFixpoint, IterationBudgetExhausted, SizeBudgetExhausted };

const char* statusName(FixpointStatus s);

struct FixpointResult {
    Interpretation interpretation;
    int iterations = 0;
    FixpointStatus status = FixpointStatus::ReachedFixpoint;
    /// perRoundDeltas[n][q]: tuples q gained in round n+1.
    std::vector<std::map<std::string, std::size_t>> perRoundDeltas;
    /// `round=<n> pred=<q> new=<k> total=<m>` lines, when tracing.
    std::vector<std::string> trace;
};

// --- binding plans ---------------------------------------------------------

struct PlanStep {
    enum class Kind {
        Filter,     // every variable bound: test the atom
        Solve,      // `v = t` / `t = v` with t bound: compute, then match v
        Generate,   // stored predicate: join against its current relation
        Scan,       // no way to bind this variable but to enumerate D
    };
    Kind kind = Kind::Filter;
    std::size_t conjunct = 0;        // index into the disjunct (not for Scan)
    bool solveLeftFromRight = true;  // Solve: which side is computed
    std::string variable;            // Scan only
    std::vector<std::string> binds;  // variables first bound by this step
};

struct DisjunctPlan {
    std::vector<PlanStep> steps;
    bool rangeRestricted() const;
};

struct BindingPlan {
    std::string predicate;
    std::vector<DisjunctPlan> disjuncts;
};

struct PlanOutcome {
    std::map<std::string, BindingPlan> plans;
    std::vector<Diagnostic> diagnostics;  // NotRangeRestricted, one per unbindable variable
};

/**
 * Greedy plan per alternative: a filter when some atom is fully bound, else a
 * solvable equation, else the generator with the most bound arguments. A
 * variable nothing can bind gets a Scan step and a NotRangeRestricted
 * diagnostic. `boundHead` optionally marks head positions bound on entry.
 */
PlanOutcome planBindings(const Program& program, const Structure& structure,
                         const std::map<std::string, std::vector<bool>>* boundHead = nullptr);

std::string formatPlan(const Program& program, const BindingPlan& plan);

// --- steps and iteration ---------------------------------------------------

/// T_P(I) by Def. 5.1 over an enumerable domain. Extensional relations pass
/// through. Throws Error("NonEnumerableDomain").
Interpretation stepNaive(const Program& program, const Interpretation& I, const Structure& S);

/// T_P(I) by binding plans; equal to stepNaive whenever both apply. Scan
/// steps need an enumerable domain, otherwise Error("NotRangeRestricted").
Interpretation stepBinding(const Program& program, const Interpretation& I, const Structure& S);

Interpretation step(const Program& program, const Interpretation& I, const Structure& S, Evaluator e);

/// ⊥ with the extensional relations taken from `extensional` (when given).
Interpretation bottomWith(const Program& program, const Structure& S,
                          const Interpretation* extensional = nullptr);

/// Iterates from ⊥ until a round adds nothing or a budget runs out.
FixpointResult lfp(const Program& program, const Structure& S, const FixpointConfig& config,
                   const Interpretation* extensional = nullptr);

// --- models ----------------------------------------------------------------

struct ModelWitness {
    std::string predicate;
    Assignment alpha;  // in M(B_q) but not in M(A_q)
};

struct ModelCheck {
    bool model = true;
    std::optional<ModelWitness> witness;
};

/// Lemma 4.1: I is a model iff M(A_q) ⊇ M(B_q) for every clause.
ModelCheck isModel(const Program& program, const Interpretation& I, const Structure& S);

/// Theorem 5.2 cross-check: isModel(I) must agree with T_P(I) ⪯ I.
/// Returns the common verdict; throws Error("TheoremViolation") otherwise.
bool checkModelFixpointEquivalence(const Program& program, const Interpretation& I,
                                   const Structure& S);

}  // namespace relkit
