// relkit: validate, evaluate, query, model-check and transpile relational programs.
//
// Exit status: 0 success, 1 diagnostics or negative answer, 2 usage or
// format error, 3 resource budget exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relkit/errors.h"
#include "relkit/eval.h"
#include "relkit/fixpoint.h"
#include "relkit/interpretation.h"
#include "relkit/parser.h"
#include "relkit/stdlib.h"
#include "relkit/transpile.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace relkit;

namespace {

enum Exit { Ok = 0, Diagnostics = 1, Usage = 2, Budget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A source is a file, a pack directory (stdlib/evenOdd) or a bundled pack
// (stdlib:evenOdd). Packs resolve by extension.
struct Source {
    std::string name;
    std::string text;
};

std::optional<std::string> readFile(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::optional<Source> packFile(const std::string& target, const std::string& ext) {
    if (target.starts_with("stdlib:")) {
        std::string name = target.substr(7);
        ExamplePack pack;
        try {
            pack = loadExample(name);
        } catch (const Error&) {
            throw UsageError("unknown bundled example '" + name + "'");
        }
        std::string file = name + ext;
        if (ext == ".rel") return Source{file, pack.programText};
        if (ext == ".dom") return Source{file, pack.domainText};
        if (ext == ".modes" && pack.modeText) return Source{file, *pack.modeText};
        return std::nullopt;
    }
    fs::path dir(target);
    std::error_code ec;
    if (fs::is_directory(dir, ec)) {
        fs::path file = dir / (dir.filename().string() + ext);
        if (dir.filename().empty()) file = dir / (dir.parent_path().filename().string() + ext);
        if (auto t = readFile(file)) return Source{file.string(), *t};
        return std::nullopt;
    }
    if (ext == ".rel" || fs::path(target).extension() == ext) {
        if (auto t = readFile(target)) return Source{target, *t};
        throw UsageError("cannot read '" + target + "'");
    }
    // A sibling of a program file: foo.rel -> foo.dom
    fs::path sibling = fs::path(target).replace_extension(ext);
    if (auto t = readFile(sibling)) return Source{sibling.string(), *t};
    return std::nullopt;
}

Source requireFile(const std::string& path, const std::string& what) {
    if (path.starts_with("stdlib:") || fs::is_directory(path)) {
        auto ext = what == "program" ? ".rel" : what == "domain" ? ".dom" : what == "modes" ? ".modes" : "";
        if (auto s = packFile(path, ext)) return *s;
        throw UsageError("no " + what + " file in '" + path + "'");
    }
    auto t = readFile(path);
    if (!t) throw UsageError("cannot read " + what + " file '" + path + "'");
    return Source{path, *t};
}

Source optionalCompanion(const std::string& explicitPath, const std::string& programPath, const std::string& ext,
                         const std::string& what) {
    if (!explicitPath.empty()) return requireFile(explicitPath, what);
    if (auto s = packFile(programPath, ext)) return *s;
    throw UsageError("no " + what + " given and none found next to '" + programPath + "'");
}

json diagnosticJson(const Diagnostic& d) {
    json j{{"code", d.code}, {"message", d.message}};
    if (!d.predicate.empty()) j["predicate"] = d.predicate;
    if (d.span && d.span->valid()) {
        j["span"] = {{"file", d.span->file},
                     {"startLine", d.span->startLine},
                     {"startCol", d.span->startCol},
                     {"endLine", d.span->endLine},
                     {"endCol", d.span->endCol}};
    }
    return j;
}

void printDiagnostics(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << d.toString() << "\n";
}

json relationsJson(const Interpretation& I) {
    json rels = json::object();
    for (const auto& q : I.predicates()) {
        json tuples = json::array();
        for (const auto& t : sortedTuples(I.relation(q))) {
            json row = json::array();
            for (const auto& v : t) row.push_back(v.toString());
            tuples.push_back(row);
        }
        rels[q] = tuples;
    }
    return rels;
}

struct Loaded {
    Program program;
    Structure structure;
    std::optional<Interpretation> data;
};

Program loadProgram(const std::string& path) {
    Source src = requireFile(path, "program");
    auto outcome = parseProgram(src.text, src.name);
    if (!outcome.ok()) throw FormatError(outcome.diagnostics);
    return std::move(outcome.program);
}

Loaded loadAll(const std::string& programPath, const std::string& domainPath, const std::string& dataPath) {
    Loaded l;
    l.program = loadProgram(programPath);
    Source dom = optionalCompanion(domainPath, programPath, ".dom", "domain");
    l.structure = parseStructure(dom.text, l.program.signature(), dom.name);
    if (!dataPath.empty()) {
        Source data = requireFile(dataPath, "data");
        l.data = parseRelationData(data.text, l.program.signature(), l.structure, data.name);
    }
    return l;
}

int defaultMaxIterations() {
    if (const char* env = std::getenv("RELKIT_MAX_ITER")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
        throw UsageError("RELKIT_MAX_ITER must be a positive integer");
    }
    return 1000;
}

Evaluator evaluatorFrom(const std::string& name) {
    if (name == "naive") return Evaluator::Naive;
    if (name == "binding") return Evaluator::Binding;
    throw UsageError("evaluator must be 'naive' or 'binding'");
}

std::string statusLine(const FixpointResult& r) {
    switch (r.status) {
        case FixpointStatus::ReachedFixpoint:
            return "fixpoint reached in " + std::to_string(r.iterations) + " rounds";
        case FixpointStatus::IterationBudgetExhausted:
            return "iteration budget exhausted after " + std::to_string(r.iterations) + " rounds";
        case FixpointStatus::SizeBudgetExhausted:
            return "relation size budget exhausted after " + std::to_string(r.iterations) + " rounds";
    }
    return "";
}

struct Options {
    std::string program, domain, data, out, modes, atom, rdata, run, evaluator = "binding", format = "text";
    int maxIter = 0;
    std::size_t maxSize = 1'000'000;
    int maxDepth = 10'000;
    bool trace = false;
};

FixpointConfig configFrom(const Options& o) {
    FixpointConfig c;
    c.maxIterations = o.maxIter > 0 ? o.maxIter : defaultMaxIterations();
    c.maxRelationSize = o.maxSize;
    c.evaluator = evaluatorFrom(o.evaluator);
    c.trace = o.trace;
    return c;
}

bool wantJson(const Options& o) {
    if (o.format != "text" && o.format != "json") throw UsageError("--format must be 'text' or 'json'");
    return o.format == "json";
}

void writeOut(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

// --- commands ----------------------------------------------------------------

int cmdValidate(const Options& o) {
    Source src = requireFile(o.program, "program");
    auto outcome = parseProgram(src.text, src.name);
    if (wantJson(o)) {
        json j{{"valid", outcome.ok()}, {"diagnostics", json::array()}};
        for (const auto& d : outcome.diagnostics) j["diagnostics"].push_back(diagnosticJson(d));
        std::cout << j.dump(2) << "\n";
    } else {
        printDiagnostics(outcome.diagnostics);
        if (outcome.ok()) {
            std::cout << src.name << ": ok (" << outcome.program.clauses().size() << " clauses)\n";
        }
    }
    return outcome.ok() ? Ok : Diagnostics;
}

int cmdEval(const Options& o) {
    bool asJson = wantJson(o);
    FixpointConfig config = configFrom(o);
    Loaded l = loadAll(o.program, o.domain, o.data);
    FixpointResult r = lfp(l.program, l.structure, config, l.data ? &*l.data : nullptr);
    std::string rdata = formatRelationData(r.interpretation);
    if (!o.out.empty()) writeOut(o.out, rdata);
    if (asJson) {
        json j{{"status", statusName(r.status)},
               {"iterations", r.iterations},
               {"relations", relationsJson(r.interpretation)}};
        if (config.trace) j["trace"] = r.trace;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& line : r.trace) std::cout << line << "\n";
        std::cout << statusLine(r) << "\n";
        if (o.out.empty()) std::cout << rdata;
    }
    return r.status == FixpointStatus::ReachedFixpoint ? Ok : Budget;
}

int cmdQuery(const Options& o) {
    bool asJson = wantJson(o);
    FixpointConfig config = configFrom(o);
    Loaded l = loadAll(o.program, o.domain, o.data);
    Atom atom;
    try {
        atom = parseAtom(o.atom, l.program.signature());
    } catch (const FormatError& e) {
        printDiagnostics(e.diagnostics());
        return Usage;
    }
    if (!l.program.signature().predicateArity(atom.predicate) && !Signature::isReservedPredicate(atom.predicate))
        throw UsageError("unknown predicate '" + atom.predicate + "' in query");

    FixpointResult r = lfp(l.program, l.structure, config, l.data ? &*l.data : nullptr);

    // Answer the query as one more clause evaluated over the least model.
    std::vector<std::string> vars;
    for (const auto& t : atom.args)
        for (const auto& v : freeVariables(t))
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    Program withQuery = l.program;
    const std::string head = "?query";
    withQuery.signature().declarePredicate(head, vars.size());
    Clause clause;
    clause.head.predicate = head;
    for (const auto& v : vars) clause.head.args.push_back(Term::variable(v));
    Disjunct d;
    d.conjuncts.push_back(atom);
    clause.body.push_back(d);
    withQuery.addClause(clause);
    Interpretation I = r.interpretation;
    I.declare(head, vars.size());
    Interpretation answered = stepBinding(withQuery, I, l.structure);
    auto answers = sortedTuples(answered.relation(head));

    if (asJson) {
        json rows = json::array();
        for (const auto& t : answers) {
            json row = json::object();
            for (std::size_t i = 0; i < vars.size(); ++i) row[vars[i]] = t[i].toString();
            rows.push_back(row);
        }
        std::cout << json{{"status", statusName(r.status)}, {"answers", rows}}.dump(2) << "\n";
    } else {
        for (const auto& t : answers) {
            if (vars.empty()) {
                std::cout << "true\n";
                continue;
            }
            for (std::size_t i = 0; i < vars.size(); ++i)
                std::cout << (i ? ", " : "") << vars[i] << " = " << t[i].toString();
            std::cout << "\n";
        }
        if (answers.empty()) std::cerr << "no answers\n";
        if (r.status != FixpointStatus::ReachedFixpoint) std::cerr << statusLine(r) << "\n";
    }
    if (r.status != FixpointStatus::ReachedFixpoint) return Budget;
    return answers.empty() ? Diagnostics : Ok;
}

int cmdCheckModel(const Options& o) {
    bool asJson = wantJson(o);
    Loaded l = loadAll(o.program, o.domain, "");
    Source data = requireFile(o.rdata, "data");
    Interpretation I = parseRelationData(data.text, l.program.signature(), l.structure, data.name);
    ModelCheck m = isModel(l.program, I, l.structure);
    if (asJson) {
        json j{{"model", m.model}};
        if (m.witness) {
            json alpha = json::object();
            for (const auto& [k, v] : m.witness->alpha) alpha[k] = v.toString();
            j["witness"] = {{"predicate", m.witness->predicate}, {"assignment", alpha}};
        }
        std::cout << j.dump(2) << "\n";
    } else if (m.model) {
        std::cout << "model\n";
    } else {
        std::cout << "not a model: " << m.witness->predicate << " " << formatAssignment(m.witness->alpha)
                  << " satisfies the body but not the head\n";
    }
    return m.model ? Ok : Diagnostics;
}

int cmdTranspile(const Options& o) {
    bool asJson = wantJson(o);
    Program program = loadProgram(o.program);
    Source modesSrc = optionalCompanion(o.modes, o.program, ".modes", "modes");
    ModeTable modes = parseModes(modesSrc.text, program.signature(), modesSrc.name);
    Structure structure = Structure::defaults();
    if (!o.domain.empty()) {
        Source dom = requireFile(o.domain, "domain");
        structure = parseStructure(dom.text, program.signature(), dom.name);
    }
    auto diags = modeCheck(program, modes, structure);
    if (!diags.empty()) {
        if (asJson) {
            json j{{"diagnostics", json::array()}};
            for (const auto& d : diags) j["diagnostics"].push_back(diagnosticJson(d));
            std::cout << j.dump(2) << "\n";
        } else {
            printDiagnostics(diags);
        }
        return Diagnostics;
    }
    ProcUnit unit = lower(program, modes, structure);
    std::string text = render(unit);
    if (!o.out.empty()) writeOut(o.out, text);
    json j{{"code", text}};
    int status = Ok;
    if (!o.run.empty()) {
        Atom call;
        try {
            call = parseAtom(o.run, program.signature());
        } catch (const FormatError& e) {
            printDiagnostics(e.diagnostics());
            return Usage;
        }
        const ProcFunction* fn = unit.find(call.predicate);
        if (!fn) throw UsageError("no transpiled function '" + call.predicate + "'");
        std::vector<Value> inputs;
        for (const auto& t : call.args) {
            Applied v = evalTerm(t, structure, {});
            if (!v.defined()) throw UsageError("argument '" + prettyPrint(t) + "' has no value");
            inputs.push_back(v.value);
        }
        ExecOptions options;
        options.maxDepth = o.maxDepth;
        std::string runLine;
        try {
            ExecResult r = execute(unit, call.predicate, inputs, structure, options);
            json run{{"success", r.success}, {"depth", r.maxDepth}};
            if (r.success) {
                std::size_t k = 0;
                json outs = json::object();
                for (std::size_t i = 0; i < fn->params.size(); ++i) {
                    if (fn->modes[i] != Mode::Out) continue;
                    runLine += (k ? " " : "") + fn->params[i] + "=" + r.outs[k].toString();
                    outs[fn->params[i]] = r.outs[k].toString();
                    ++k;
                }
                run["outs"] = outs;
            } else {
                runLine = "failure";
                status = Diagnostics;
            }
            j["run"] = run;
            if (!asJson) std::cerr << "depth=" << r.maxDepth << "\n";
        } catch (const Error& e) {
            if (e.code() != "ResourceLimit") throw;
            runLine = "resource limit: " + std::string(e.what());
            j["run"] = {{"error", e.code()}, {"message", e.what()}};
            status = Budget;
        }
        if (!asJson) {
            if (o.out.empty()) std::cout << text;
            std::cout << runLine << "\n";
        }
    } else if (!asJson && o.out.empty()) {
        std::cout << text;
    }
    if (asJson) std::cout << j.dump(2) << "\n";
    return status;
}

int cmdPlan(const Options& o) {
    Loaded l = loadAll(o.program, o.domain, "");
    PlanOutcome plans = planBindings(l.program, l.structure);
    for (const auto& clause : l.program.clauses())
        std::cout << formatPlan(l.program, plans.plans.at(clause.head.predicate));
    printDiagnostics(plans.diagnostics);
    return plans.diagnostics.empty() ? Ok : Diagnostics;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relkit: least-fixpoint semantics and transpilation of relational programs"};
    app.require_subcommand(1);
    Options o;

    auto addFormat = [&](CLI::App* c) { c->add_option("--format", o.format, "text or json"); };
    auto addEval = [&](CLI::App* c) {
        c->add_option("--max-iter", o.maxIter, "round budget (default: RELKIT_MAX_ITER or 1000)");
        c->add_option("--max-size", o.maxSize, "largest relation allowed");
        c->add_option("--evaluator", o.evaluator, "naive or binding");
        c->add_option("--data", o.data, "extensional relations (.rdata)");
    };

    auto* validate = app.add_subcommand("validate", "parse and validate a program");
    validate->add_option("program", o.program)->required();
    addFormat(validate);

    auto* eval = app.add_subcommand("eval", "compute the least fixpoint");
    eval->add_option("program", o.program)->required();
    eval->add_option("domain", o.domain, "domain file (.dom); defaults to the program's sibling");
    eval->add_option("--out", o.out, "write relations to this .rdata file");
    eval->add_flag("--trace", o.trace, "print per-round counts");
    addEval(eval);
    addFormat(eval);

    auto* query = app.add_subcommand("query", "answer an atom over the least fixpoint");
    std::vector<std::string> queryArgs;
    query->add_option("args", queryArgs, "program [domain] atom")->required()->expected(2, 3);
    addEval(query);
    addFormat(query);

    auto* check = app.add_subcommand("check-model", "test whether relation data is a model");
    check->add_option("program", o.program)->required();
    check->add_option("domain", o.domain)->required();
    check->add_option("rdata", o.rdata)->required();
    addFormat(check);

    auto* transpile = app.add_subcommand("transpile", "lower a moded program to procedural IR");
    transpile->add_option("program", o.program)->required();
    transpile->add_option("modes", o.modes, "mode file (.modes); defaults to the program's sibling");
    transpile->add_option("--domain", o.domain, "structure for --run (default: plain numbers)");
    transpile->add_option("--out", o.out, "write the rendered IR here");
    transpile->add_option("--run", o.run, "execute an entry, e.g. 'q(1000000001.1, 17)'");
    transpile->add_option("--max-depth", o.maxDepth, "recursion limit for --run");
    addFormat(transpile);

    auto* plan = app.add_subcommand("plan", "show binding plans");
    plan->add_option("program", o.program)->required();
    plan->add_option("domain", o.domain);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*validate) return cmdValidate(o);
        if (*eval) return cmdEval(o);
        if (*query) {
            o.program = queryArgs.front();
            o.atom = queryArgs.back();
            if (queryArgs.size() == 3) o.domain = queryArgs[1];
            return cmdQuery(o);
        }
        if (*check) return cmdCheckModel(o);
        if (*transpile) return cmdTranspile(o);
        if (*plan) return cmdPlan(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const FormatError& e) {
        printDiagnostics(e.diagnostics());
        return Usage;
    } catch (const Error& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
        return Diagnostics;
    }
    return Usage;
}
