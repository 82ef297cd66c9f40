#include "relkit/transpile.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "relkit/errors.h"
#include "relkit/eval.h"
#include "relkit/parser.h"

namespace relkit {

// ---------------------------------------------------------------------------
// Mode files

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Position of `word` as a whole word in s, or npos.
std::size_t findWord(const std::string& s, std::string_view word) {
    std::size_t at = 0;
    while ((at = s.find(word, at)) != std::string::npos) {
        bool leftOk = at == 0 || !std::isalnum(static_cast<unsigned char>(s[at - 1]));
        std::size_t end = at + word.size();
        bool rightOk = end >= s.size() || !std::isalnum(static_cast<unsigned char>(s[end]));
        if (leftOk && rightOk) return at;
        at = end;
    }
    return std::string::npos;
}

}  // namespace

std::string formatModes(const std::vector<Mode>& modes) {
    std::string out;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i) out += ",";
        out += modes[i] == Mode::In ? "in" : "out";
    }
    return out;
}

ModeTable parseModes(std::string_view text, const Signature& signature, const std::string& file) {
    ModeTable table;
    std::vector<Diagnostic> diags;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineNo;
        std::string line(raw);
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        SourceSpan span{file, lineNo, 1, lineNo, static_cast<int>(raw.size()) + 1};
        auto problem = [&](std::string code, std::string message) {
            diags.push_back({std::move(code), std::move(message), "", span});
        };

        auto colon = line.find(':');
        if (colon == std::string::npos) {
            problem("SyntaxError", "expected 'predicate: in,out,...'");
            continue;
        }
        ModeDecl decl;
        decl.predicate = trim(line.substr(0, colon));
        decl.span = span;
        std::string rest = line.substr(colon + 1);
        std::string condition;
        if (auto req = findWord(rest, "requires"); req != std::string::npos) {
            condition = trim(rest.substr(req + 8));
            rest = rest.substr(0, req);
        }
        bool bad = false;
        std::stringstream list(rest);
        std::string item;
        while (std::getline(list, item, ',')) {
            item = trim(item);
            if (item == "in") decl.modes.push_back(Mode::In);
            else if (item == "out") decl.modes.push_back(Mode::Out);
            else if (!(item.empty() && decl.modes.empty() && trim(rest).empty())) bad = true;
        }
        if (bad) {
            problem("SyntaxError", "modes must be 'in' or 'out', separated by commas");
            continue;
        }
        auto arity = signature.predicateArity(decl.predicate);
        if (!arity || Signature::isReservedPredicate(decl.predicate)) {
            problem("UnknownPredicate", "unknown predicate '" + decl.predicate + "'");
            continue;
        }
        if (*arity != decl.modes.size()) {
            problem("ArityMismatch", "predicate '" + decl.predicate + "' has arity " + std::to_string(*arity) +
                                         ", " + std::to_string(decl.modes.size()) + " modes given");
            continue;
        }
        if (!condition.empty()) {
            try {
                decl.preconditions = parseConjunction(condition, signature);
            } catch (const FormatError& e) {
                problem("SyntaxError", "in requires clause: " + e.diagnostics().front().message);
                continue;
            }
        }
        if (table.contains(decl.predicate)) {
            problem("DuplicateMode", "predicate '" + decl.predicate + "' already has a mode");
            continue;
        }
        table.emplace(decl.predicate, std::move(decl));
    }
    if (!diags.empty()) throw FormatError(std::move(diags));
    return table;
}

// ---------------------------------------------------------------------------
// Dataflow

namespace {

bool allBound(const Term& t, const std::set<std::string>& bound) {
    for (const auto& v : freeVariables(t))
        if (!bound.contains(v)) return false;
    return true;
}

std::optional<std::string> firstUnbound(const Term& t, const std::set<std::string>& bound) {
    switch (t.kind) {
        case Term::Kind::Variable:
            if (!bound.contains(t.name)) return t.name;
            return std::nullopt;
        case Term::Kind::Constant: return std::nullopt;
        case Term::Kind::Application:
            for (const auto& a : t.args)
                if (auto v = firstUnbound(a, bound)) return v;
            return std::nullopt;
    }
    return std::nullopt;
}

bool matchable(const Term& t, const std::set<std::string>& bound, const FunctionTable& functions) {
    if (t.kind != Term::Kind::Application || allBound(t, bound)) return true;
    if (!functions.invertible(t.name)) return false;
    return std::all_of(t.args.begin(), t.args.end(),
                       [&](const Term& a) { return matchable(a, bound, functions); });
}

void bindAll(const Term& t, std::set<std::string>& bound) {
    for (const auto& v : freeVariables(t)) bound.insert(v);
}

class Lowerer {
public:
    Lowerer(const Program& program, const ModeTable& modes, const Structure& structure)
        : program_(program), modes_(modes), structure_(structure) {}

    std::vector<Diagnostic> diagnostics;

    std::optional<ProcFunction> lowerPredicate(const Clause& clause, const ModeDecl& decl) {
        ProcFunction fn;
        fn.name = clause.head.predicate;
        fn.params = clause.headVariables();
        fn.modes = decl.modes;
        fn.preconditions = decl.preconditions;
        std::size_t before = diagnostics.size();

        std::set<std::string> inputs;
        for (std::size_t i = 0; i < fn.params.size(); ++i)
            if (fn.modes[i] == Mode::In) inputs.insert(fn.params[i]);
        for (const auto& atom : decl.preconditions) {
            for (const auto& v : freeVariables(atom)) {
                if (!inputs.contains(v)) {
                    report("PreconditionVariable",
                           "requires clause of '" + fn.name + "' uses '" + v + "', which is not an in-parameter",
                           fn.name, decl.span);
                }
            }
        }
        for (std::size_t r = 0; r < clause.body.size(); ++r) {
            if (auto b = lowerAlternative(clause, fn, r, inputs)) fn.branches.push_back(std::move(*b));
        }
        if (diagnostics.size() != before) return std::nullopt;
        return fn;
    }

private:
    void report(std::string code, std::string message, const std::string& predicate, const SourceSpan& span) {
        Diagnostic d{std::move(code), std::move(message), predicate, std::nullopt};
        if (span.valid()) d.span = span;
        diagnostics.push_back(std::move(d));
    }

    std::optional<IRBranch> lowerAlternative(const Clause& clause, const ProcFunction& fn, std::size_t r,
                                             const std::set<std::string>& inputs) {
        const Disjunct& d = clause.body[r];
        const SourceSpan& span = d.span.valid() ? d.span : clause.span;
        const std::string where = "alternative " + std::to_string(r + 1) + " of '" + fn.name + "'";
        IRBranch branch;
        branch.alternative = r + 1;
        branch.locals = d.existentials;
        std::set<std::string> bound = inputs;

        auto fail = [&](std::string code, std::string message) -> std::optional<IRBranch> {
            report(std::move(code), message + " in " + where, fn.name, span);
            return std::nullopt;
        };

        for (std::size_t i = 0; i < d.conjuncts.size(); ++i) {
            const Atom& a = d.conjuncts[i];
            IRStep st;
            st.conjunct = i;
            st.atom = a;
            if (a.predicate == "true" || a.predicate == "false") {
                st.kind = IRStep::Kind::Test;
            } else if (a.predicate == "=") {
                const Term& l = a.args[0];
                const Term& rt = a.args[1];
                bool lb = allBound(l, bound), rb = allBound(rt, bound);
                if (lb && rb) {
                    st.kind = IRStep::Kind::Test;
                } else if (l.isVariable() && rb) {
                    st.kind = IRStep::Kind::Assign;
                    st.target = l.name;
                    st.value = rt;
                    bound.insert(l.name);
                } else if (rt.isVariable() && lb) {
                    st.kind = IRStep::Kind::Assign;
                    st.target = rt.name;
                    st.value = l;
                    bound.insert(rt.name);
                } else if (rb && matchable(l, bound, structure_.functions)) {
                    st.kind = IRStep::Kind::Match;
                    st.subject = rt;
                    st.pattern = l;
                    bindAll(l, bound);
                } else if (lb && matchable(rt, bound, structure_.functions)) {
                    st.kind = IRStep::Kind::Match;
                    st.subject = l;
                    st.pattern = rt;
                    bindAll(rt, bound);
                } else {
                    auto v = firstUnbound(l, bound);
                    if (!v) v = firstUnbound(rt, bound);
                    return fail("UnboundVariable", "cannot bind '" + *v + "' in '" + prettyPrint(a) + "'");
                }
            } else if (structure_.functions.relation(a.predicate) || !program_.clauseFor(a.predicate)) {
                // builtin comparison or extensional relation: a test
                if (!structure_.functions.relation(a.predicate)) {
                    auto m = modes_.find(a.predicate);
                    if (m != modes_.end() &&
                        std::find(m->second.modes.begin(), m->second.modes.end(), Mode::Out) != m->second.modes.end()) {
                        return fail("ExtensionalOutput",
                                    "extensional predicate '" + a.predicate + "' can only be used with all-in mode");
                    }
                }
                for (const auto& t : a.args) {
                    if (auto v = firstUnbound(t, bound))
                        return fail("UnboundVariable", "'" + *v + "' is unbound in test '" + prettyPrint(a) + "'");
                }
                st.kind = IRStep::Kind::Test;
            } else {
                auto m = modes_.find(a.predicate);
                if (m == modes_.end())
                    return fail("MissingMode", "call to '" + a.predicate + "', which has no mode declaration");
                std::set<std::string> outs;
                for (std::size_t k = 0; k < a.args.size(); ++k) {
                    const Term& t = a.args[k];
                    if (m->second.modes[k] == Mode::In) {
                        if (auto v = firstUnbound(t, bound)) {
                            return fail("UnboundInput", "in-argument " + std::to_string(k + 1) + " of call '" +
                                                            prettyPrint(a) + "' needs '" + *v + "', which is unbound");
                        }
                    }
                }
                for (std::size_t k = 0; k < a.args.size(); ++k) {
                    const Term& t = a.args[k];
                    if (m->second.modes[k] != Mode::Out) continue;
                    if (!t.isVariable() || bound.contains(t.name) || outs.contains(t.name)) {
                        return fail("OutputNotFresh", "out-argument " + std::to_string(k + 1) + " of call '" +
                                                          prettyPrint(a) + "' must be an unbound variable, found '" +
                                                          prettyPrint(t) + "'");
                    }
                    outs.insert(t.name);
                }
                for (const auto& v : outs) bound.insert(v);
                st.kind = IRStep::Kind::Call;
            }
            branch.steps.push_back(std::move(st));
        }
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            if (fn.modes[i] == Mode::Out && !bound.contains(fn.params[i]))
                return fail("UnboundOutput", "out-parameter '" + fn.params[i] + "' is never bound");
        }
        for (const auto& e : d.existentials) {
            if (!bound.contains(e)) return fail("UnboundExistential", "local '" + e + "' is never bound");
        }
        return branch;
    }

    const Program& program_;
    const ModeTable& modes_;
    const Structure& structure_;
};

struct Lowered {
    ProcUnit unit;
    std::vector<Diagnostic> diagnostics;
};

Lowered lowerAll(const Program& program, const ModeTable& modes, const Structure& structure) {
    Lowered out;
    Lowerer lowerer(program, modes, structure);
    for (const auto& [name, decl] : modes) {
        if (program.clauseFor(name)) continue;
        if (std::find(decl.modes.begin(), decl.modes.end(), Mode::Out) != decl.modes.end()) {
            Diagnostic d{"ExtensionalOutput", "extensional predicate '" + name + "' can only have all-in mode", name,
                         std::nullopt};
            if (decl.span.valid()) d.span = decl.span;
            lowerer.diagnostics.push_back(std::move(d));
        }
    }
    for (const auto& clause : program.clauses()) {
        auto it = modes.find(clause.head.predicate);
        if (it == modes.end()) continue;
        if (auto fn = lowerer.lowerPredicate(clause, it->second)) out.unit.functions.push_back(std::move(*fn));
    }
    out.diagnostics = std::move(lowerer.diagnostics);
    return out;
}

}  // namespace

std::vector<Diagnostic> modeCheck(const Program& program, const ModeTable& modes, const Structure& structure) {
    return lowerAll(program, modes, structure).diagnostics;
}

ProcUnit lower(const Program& program, const ModeTable& modes, const Structure& structure) {
    auto lowered = lowerAll(program, modes, structure);
    if (!lowered.diagnostics.empty())
        throw Error("ModeError", lowered.diagnostics.front().toString());
    return std::move(lowered.unit);
}

const ProcFunction* ProcUnit::find(std::string_view name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

constexpr std::size_t kOneLineWidth = 50;

std::string renderCheck(const IRStep& st) {
    switch (st.kind) {
        case IRStep::Kind::Test:
            if (st.atom.predicate == "=")
                return prettyPrint(st.atom.args[0]) + " == " + prettyPrint(st.atom.args[1]);
            return prettyPrint(st.atom);
        case IRStep::Kind::Match: return "match(" + prettyPrint(st.subject) + ", " + prettyPrint(st.pattern) + ")";
        case IRStep::Kind::Call: return prettyPrint(st.atom);
        case IRStep::Kind::Assign: break;
    }
    return "";
}

std::string joinChecks(std::vector<IRStep>::const_iterator b, std::vector<IRStep>::const_iterator e) {
    std::string out;
    for (auto it = b; it != e; ++it) {
        if (it != b) out += " && ";
        out += renderCheck(*it);
    }
    return out;
}

using StepIt = std::vector<IRStep>::const_iterator;

void renderItems(StepIt b, StepIt e, int indent, bool lastBranch, std::vector<std::string>& lines) {
    std::string pad(indent, ' ');
    std::string assigns;
    while (b != e && b->kind == IRStep::Kind::Assign) {
        if (!assigns.empty()) assigns += " ";
        assigns += b->target + " = " + prettyPrint(b->value) + ";";
        ++b;
    }
    if (b == e) {
        lines.push_back(pad + assigns + (assigns.empty() ? "" : " ") + "return true;");
        return;
    }
    if (!assigns.empty()) lines.push_back(pad + assigns);
    StepIt run = b;
    while (run != e && run->kind != IRStep::Kind::Assign) ++run;
    std::string checks = joinChecks(b, run);
    if (run == e) {
        lines.push_back(pad + (lastBranch ? "return " + checks + ";" : "if (" + checks + ") return true;"));
        return;
    }
    lines.push_back(pad + "if (" + checks + ") {");
    renderItems(run, e, indent + 2, lastBranch, lines);
    lines.push_back(pad + "}");
}

void renderBranch(const IRBranch& br, bool last, std::vector<std::string>& lines) {
    auto b = br.steps.begin(), e = br.steps.end();
    StepIt guardEnd = b;
    while (guardEnd != e && (guardEnd->kind == IRStep::Kind::Test || guardEnd->kind == IRStep::Kind::Match))
        ++guardEnd;
    // A branch made only of checks keeps them all in the guard.
    std::string guard = joinChecks(b, guardEnd);
    std::string provenance = "alternative " + std::to_string(br.alternative);
    std::string open = guard.empty() ? "  {" : "  if (" + guard + ") {";

    bool onlyAssigns = std::all_of(guardEnd, e, [](const IRStep& s) { return s.kind == IRStep::Kind::Assign; });
    if (br.locals.empty() && onlyAssigns) {
        std::vector<std::string> inner;
        renderItems(guardEnd, e, 0, last, inner);
        std::string one = open + " " + inner.front() + " }";
        if (one.size() <= kOneLineWidth) {
            lines.push_back(one + " // " + provenance);
            return;
        }
    }
    if (br.locals.empty()) {
        lines.push_back(open + " // " + provenance);
    } else {
        std::string locals;
        for (const auto& l : br.locals) locals += " loc " + l + ";";
        lines.push_back(open + locals + " // local variables, " + provenance);
    }
    renderItems(guardEnd, e, 4, last, lines);
    lines.push_back("  }");
}

}  // namespace

std::string render(const ProcUnit& unit) {
    std::vector<std::string> lines;
    for (const auto& fn : unit.functions) {
        std::string header = "bool " + fn.name + "(";
        for (std::size_t i = 0; i < fn.params.size(); ++i) header += (i ? ", " : "") + fn.params[i];
        header += "){ // mode " + formatModes(fn.modes);
        lines.push_back(header);
        if (!fn.preconditions.empty()) {
            std::string cond;
            for (std::size_t i = 0; i < fn.preconditions.size(); ++i)
                cond += (i ? " && " : "") + prettyPrint(fn.preconditions[i]);
            lines.push_back("  assert(" + cond + ");");
        }
        for (std::size_t k = 0; k < fn.branches.size(); ++k)
            renderBranch(fn.branches[k], k + 1 == fn.branches.size(), lines);
        lines.push_back("  return false;");
        lines.push_back("}");
    }
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Interpreter

namespace {

class Interpreter {
public:
    Interpreter(const ProcUnit& unit, const Structure& structure, const ExecOptions& options)
        : unit_(unit), structure_(structure), options_(options) {}

    int deepest = 0;

    std::optional<std::vector<Value>> call(const ProcFunction& fn, const std::vector<Value>& ins, int depth) {
        if (depth > options_.maxDepth)
            throw Error("ResourceLimit", "recursion depth limit " + std::to_string(options_.maxDepth) + " exceeded in '" +
                                             fn.name + "'");
        deepest = std::max(deepest, depth);
        Assignment inputs;
        std::size_t k = 0;
        for (std::size_t i = 0; i < fn.params.size(); ++i)
            if (fn.modes[i] == Mode::In) inputs[fn.params[i]] = ins.at(k++);
        for (const auto& pre : fn.preconditions) {
            if (!test(pre, inputs))
                throw Error("PreconditionViolated", "'" + fn.name + "' called with " + formatAssignment(inputs) +
                                                        ", violating " + prettyPrint(pre));
        }
        for (const auto& br : fn.branches) {
            Assignment frame = inputs;
            if (!runBranch(br, frame, depth)) continue;
            std::vector<Value> outs;
            for (std::size_t i = 0; i < fn.params.size(); ++i)
                if (fn.modes[i] == Mode::Out) outs.push_back(frame.at(fn.params[i]));
            return outs;
        }
        return std::nullopt;
    }

private:
    std::optional<Value> eval(const Term& t, const Assignment& frame) {
        Applied r = evalTerm(t, structure_, frame);
        if (r.status == Applied::Status::KindMismatch)
            throw Error("TypeError", "value-kind mismatch evaluating '" + prettyPrint(t) + "'");
        if (!r.defined()) return std::nullopt;
        return r.value;
    }

    bool test(const Atom& a, const Assignment& frame) {
        if (a.predicate == "true") return true;
        if (a.predicate == "false") return false;
        std::vector<Value> args;
        for (const auto& t : a.args) {
            auto v = eval(t, frame);
            if (!v) return false;
            args.push_back(std::move(*v));
        }
        if (a.predicate == "=") return args[0] == args[1];
        if (auto c = structure_.functions.relation(a.predicate)) {
            bool result = false;
            if (compareWith(*c, args[0], args[1], result) != Applied::Status::Ok)
                throw Error("TypeError", "cannot compare " + args[0].toString() + " and " + args[1].toString() +
                                             " in '" + prettyPrint(a) + "'");
            return result;
        }
        if (!options_.extensional || !options_.extensional->has(a.predicate))
            throw Error("UnknownPredicate", "no relation supplied for extensional predicate '" + a.predicate + "'");
        return options_.extensional->contains(a.predicate, args);
    }

    bool match(const Term& pattern, const Value& v, Assignment& frame) {
        switch (pattern.kind) {
            case Term::Kind::Variable: {
                auto it = frame.find(pattern.name);
                if (it != frame.end()) return it->second == v;
                if (!structure_.domain.contains(v)) return false;
                frame.emplace(pattern.name, v);
                return true;
            }
            case Term::Kind::Constant: {
                auto c = eval(pattern, frame);
                return c && *c == v;
            }
            case Term::Kind::Application: {
                bool ground = true;
                for (const auto& name : freeVariables(pattern)) ground = ground && frame.contains(name);
                if (!ground) {
                    auto args = structure_.functions.invert(pattern.name, pattern.args.size(), v);
                    if (!args || args->size() != pattern.args.size()) return false;
                    for (std::size_t i = 0; i < args->size(); ++i)
                        if (!match(pattern.args[i], (*args)[i], frame)) return false;
                }
                auto back = eval(pattern, frame);
                return back && *back == v;
            }
        }
        return false;
    }

    bool runBranch(const IRBranch& br, Assignment& frame, int depth) {
        for (const auto& st : br.steps) {
            switch (st.kind) {
                case IRStep::Kind::Test:
                    if (!test(st.atom, frame)) return false;
                    break;
                case IRStep::Kind::Assign: {
                    auto v = eval(st.value, frame);
                    if (!v) return false;
                    frame[st.target] = std::move(*v);
                    break;
                }
                case IRStep::Kind::Match: {
                    auto v = eval(st.subject, frame);
                    if (!v || !match(st.pattern, *v, frame)) return false;
                    break;
                }
                case IRStep::Kind::Call: {
                    const ProcFunction* callee = unit_.find(st.atom.predicate);
                    if (!callee) throw Error("UnknownEntry", "no function '" + st.atom.predicate + "'");
                    std::vector<Value> ins;
                    for (std::size_t k = 0; k < st.atom.args.size(); ++k) {
                        if (callee->modes[k] != Mode::In) continue;
                        auto v = eval(st.atom.args[k], frame);
                        if (!v) return false;
                        ins.push_back(std::move(*v));
                    }
                    auto outs = call(*callee, ins, depth + 1);
                    if (!outs) return false;
                    std::size_t j = 0;
                    for (std::size_t k = 0; k < st.atom.args.size(); ++k)
                        if (callee->modes[k] == Mode::Out) frame[st.atom.args[k].name] = (*outs)[j++];
                    break;
                }
            }
        }
        return true;
    }

    const ProcUnit& unit_;
    const Structure& structure_;
    const ExecOptions& options_;
};

}  // namespace

ExecResult execute(const ProcUnit& unit, const std::string& entry, const std::vector<Value>& inputs,
                   const Structure& structure, const ExecOptions& options) {
    const ProcFunction* fn = unit.find(entry);
    if (!fn) throw Error("UnknownEntry", "no function '" + entry + "' in the unit");
    std::size_t ins = std::count(fn->modes.begin(), fn->modes.end(), Mode::In);
    if (ins != inputs.size()) {
        throw Error("ArityMismatch", "'" + entry + "' takes " + std::to_string(ins) + " inputs, " +
                                         std::to_string(inputs.size()) + " given");
    }
    Interpreter interp(unit, structure, options);
    ExecResult result;
    auto outs = interp.call(*fn, inputs, 1);
    result.maxDepth = interp.deepest;
    if (outs) {
        result.success = true;
        result.outs = std::move(*outs);
    }
    return result;
}

AgreementReport agreeWithFixpoint(const Program& program, const ModeTable& modes, const Structure& structure,
                                  const Interpretation& leastModel, const std::vector<Query>& queries,
                                  const ExecOptions& options) {
    ProcUnit unit = lower(program, modes, structure);
    AgreementReport report;
    for (const auto& q : queries) {
        ++report.checked;
        std::string label = q.predicate + formatTuple(q.inputs);
        const ProcFunction* fn = unit.find(q.predicate);
        if (!fn) {
            report.disagreements.push_back(label + ": no function for predicate");
            continue;
        }
        ExecResult r;
        try {
            r = execute(unit, q.predicate, q.inputs, structure, options);
        } catch (const Error& e) {
            report.disagreements.push_back(label + ": " + e.code() + ": " + e.what());
            continue;
        }
        const Relation& rel = leastModel.relation(q.predicate);
        if (r.success) {
            Tuple full;
            std::size_t i = 0, o = 0;
            for (auto m : fn->modes) full.push_back(m == Mode::In ? q.inputs[i++] : r.outs[o++]);
            if (!rel.contains(full))
                report.disagreements.push_back(label + ": IR produced " + formatTuple(full) + ", not in least model");
        } else {
            for (const auto& t : rel) {
                bool same = true;
                std::size_t i = 0;
                for (std::size_t k = 0; k < t.size() && same; ++k)
                    if (fn->modes[k] == Mode::In) same = t[k] == q.inputs[i++];
                if (same) {
                    report.disagreements.push_back(label + ": IR failed but least model has " + formatTuple(t));
                    break;
                }
            }
        }
    }
    return report;
}

}  // namespace relkit
