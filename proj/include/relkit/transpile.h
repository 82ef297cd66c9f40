#pragma once

/**
 * Mode analysis and lowering of relational programs to a loop-free
 * procedural IR in a C-like pseudocode:
 *
 *   bool q(a, b, m, u){
 *     assert(0 <= a && 0 < b);
 *     if (a < b) { m = 0; u = a; return true; }
 *     ...
 *     return false;
 *   }
 *
 * Each predicate with a mode becomes one boolean function, each alternative
 * one branch, tried in source order. Conjuncts keep their source order.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relkit/ast.h"
#include "relkit/interpretation.h"
#include "relkit/structure.h"

namespace relkit {

enum class Mode { In, Out };

struct ModeDecl {
    std::string predicate;
    std::vector<Mode> modes;
    std::vector<Atom> preconditions;  // `requires` clause over in-parameters
    SourceSpan span;
};

using ModeTable = std::map<std::string, ModeDecl>;

/**
 * Reads a `.modes` file, one declaration per line:
 *
 *   q: in,in,out,out requires 0 <= a /\ 0 < b
 *
 * Condition variables refer to the clause's head variables.
 * Throws FormatError.
 */
ModeTable parseModes(std::string_view text, const Signature& signature, const std::string& file = "");

std::string formatModes(const std::vector<Mode>& modes);

/// Dataflow check of every alternative of every moded predicate. The
/// structure tells which predicates are builtin comparisons.
std::vector<Diagnostic> modeCheck(const Program& program, const ModeTable& modes,
                                  const Structure& structure);

// --- IR --------------------------------------------------------------------

struct IRStep {
    enum class Kind {
        Test,    // atom over bound values: comparison, equality, extensional lookup
        Assign,  // target = value
        Match,   // subject bound; binds the variables of pattern
        Call,    // callee(args); out positions are fresh variables
    };
    Kind kind = Kind::Test;
    Atom atom;            // Test, Call (callee and arguments)
    std::string target;   // Assign
    Term value;           // Assign
    Term subject;         // Match
    Term pattern;         // Match
    std::size_t conjunct = 0;  // provenance within the alternative
};

struct IRBranch {
    std::size_t alternative = 0;  // 1-based index of the source alternative
    std::vector<std::string> locals;
    std::vector<IRStep> steps;
};

struct ProcFunction {
    std::string name;
    std::vector<std::string> params;
    std::vector<Mode> modes;
    std::vector<Atom> preconditions;
    std::vector<IRBranch> branches;
};

struct ProcUnit {
    std::vector<ProcFunction> functions;

    const ProcFunction* find(std::string_view name) const;
};

/// Lowers every moded predicate that has a clause. Throws Error("ModeError")
/// carrying the first diagnostic when modeCheck fails.
ProcUnit lower(const Program& program, const ModeTable& modes, const Structure& structure);

/// Fig. 4-style text. Empty unit renders as the empty string.
std::string render(const ProcUnit& unit);

// --- execution -------------------------------------------------------------

struct ExecOptions {
    int maxDepth = 10'000;
    /// Relations for extensional predicates tested by the IR, if any.
    const Interpretation* extensional = nullptr;
};

struct ExecResult {
    bool success = false;
    std::vector<Value> outs;  // out positions in order, on success
    int maxDepth = 0;         // deepest call nesting reached, entry = 1
};

/**
 * Runs `entry` on its in-arguments. Branches are tried in order; a branch
 * that fails after writing out-parameters leaves them written.
 * Throws Error: ResourceLimit (depth), TypeError (value-kind mismatch),
 * PreconditionViolated, UnknownEntry, ArityMismatch.
 */
ExecResult execute(const ProcUnit& unit, const std::string& entry, const std::vector<Value>& inputs,
                   const Structure& structure, const ExecOptions& options = {});

// --- cross-check against the least model -----------------------------------

struct Query {
    std::string predicate;
    std::vector<Value> inputs;
};

struct AgreementReport {
    std::size_t checked = 0;
    std::vector<std::string> disagreements;

    bool agrees() const { return disagreements.empty(); }
};

/// For each query: success must produce a tuple of the least model, failure
/// must mean the least model has no tuple with these inputs.
AgreementReport agreeWithFixpoint(const Program& program, const ModeTable& modes,
                                  const Structure& structure, const Interpretation& leastModel,
                                  const std::vector<Query>& queries, const ExecOptions& options = {});

}  // namespace relkit
