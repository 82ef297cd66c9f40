// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relkit/errors.h"
#include "relkit/eval.h"
#include "relkit/fixpoint.h"
#include "relkit/parser.h"
#include "relkit/stdlib.h"
#include "relkit/transpile.h"
#include "support/oracle.h"
#include "support/random_programs.h"

using namespace relkit;
using relkit::testing::Oracle;
using relkit::testing::toOracle;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double budgetSeconds;
    std::function<Outcome()> run;
};

Value I(std::int64_t v) { return Value::integer(v); }

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    ExamplePack pack;
    Program program;
    Structure structure;
};

Loaded load(const std::string& name) {
    Loaded l{loadExample(name), {}, {}};
    l.program = l.pack.program();
    l.structure = l.pack.structure(l.program);
    return l;
}

// --- 1 -------------------------------------------------------------------

Outcome newton() {
    Outcome out;
    Loaded l = load("newtonSqrt2");
    FixpointConfig cfg;
    cfg.maxIterations = 4;
    FixpointResult r = lfp(l.program, l.structure, cfg);
    out.require(r.iterations <= 4, "more than 4 rounds");

    std::vector<mpq_class> iterates;
    mpq_class x = 1;
    for (int k = 0; k < 4; ++k) {
        iterates.push_back(x);
        x = (x + 2 / x) / 2;
    }
    out.require(iterates[1] == mpq_class(3, 2) && iterates[2] == mpq_class(17, 12) &&
                    iterates[3] == mpq_class(577, 408),
                "oracle iterates differ from 1, 3/2, 17/12, 577/408");
    const Relation& q = r.interpretation.relation("q");
    out.require(q.size() == iterates.size(), "q has " + std::to_string(q.size()) + " elements");
    for (const auto& v : iterates)
        out.require(q.contains({Value::rational(v)}), "missing " + v.get_str());

    mpq_class last = iterates.back();
    mpq_class err2 = last * last - 2;  // |x - √2| = |x² - 2| / (x + √2) < |x² - 2|
    out.require(abs(err2) < mpq_class(1, 100000), "577/408 too far from sqrt(2)");
    out.require(std::fabs(last.get_d() - std::sqrt(2.0)) < 1e-5, "577/408 too far from sqrt(2)");
    out.detail = out.ok ? "q = {1, 3/2, 17/12, 577/408} after " + std::to_string(r.iterations) + " rounds"
                        : out.detail;
    return out;
}

// --- 2 -------------------------------------------------------------------

Outcome deBruijn() {
    Outcome out;
    Loaded l = load("deBruijn");
    ModeTable modes = l.pack.modes(l.program);
    ProcUnit unit = lower(l.program, modes, l.structure);

    auto t0 = std::chrono::steady_clock::now();
    ExecResult r = execute(unit, "q", {Value::floating(1000000001.1), I(17)}, Structure::defaults());
    double runSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(r.success, "q(1000000001.1, 17) failed");
    if (!out.ok) return out;
    // floor-division oracle: 17 * 58823529 = 999999993, remainder 8.1
    long double a = 1000000001.1L;
    long double m = std::floor(a / 17);
    long double u = a - 17 * m;
    out.require(r.outs[0] == I(static_cast<std::int64_t>(m)), "m = " + r.outs[0].toString());
    out.require(std::fabs(r.outs[1].toDouble() - static_cast<double>(u)) <= 1e-3 &&
                    std::fabs(r.outs[1].toDouble() - 8.1) <= 1e-3,
                "u = " + r.outs[1].toString());
    out.require(r.maxDepth <= 28, "depth " + std::to_string(r.maxDepth));
    out.require(runSeconds < 1.0, "IR run took " + std::to_string(runSeconds) + " s");

    Interpretation least = lfp(l.program, l.structure, {}).interpretation;
    std::vector<Query> queries;
    testing::ORel division, reachable;
    for (int aa = 0; aa <= 40; ++aa)
        for (int b = 1; b <= 6; ++b) {
            queries.push_back({"q", {I(aa), I(b)}});
            division.insert({aa, b, aa / b, aa % b});
            // the doubled divisors stay below 2a, so they lie in 0..40 when 2a <= 40
            if (2 * aa <= 40) reachable.insert({aa, b, aa / b, aa % b});
        }
    AgreementReport rep = agreeWithFixpoint(l.program, modes, l.structure, least, queries);
    out.require(rep.checked == queries.size(), "not every query checked");
    out.require(rep.agrees(), rep.agrees() ? "" : rep.disagreements.front());

    testing::ORel got;
    const testing::OInterp leastO = toOracle(least);
    for (const auto& t : leastO.at("q"))
        if (t[1] >= 1 && t[1] <= 6) got.insert(t);
    out.require(std::includes(division.begin(), division.end(), got.begin(), got.end()),
                "lfp q contradicts integer division");
    out.require(std::includes(got.begin(), got.end(), reachable.begin(), reachable.end()),
                "lfp q misses a quotient whose computation stays in 0..40");
    std::size_t tuples = 0;
    for (const auto& qy : queries) {
        ExecResult e = execute(unit, "q", qy.inputs, l.structure);
        std::vector<int> row;
        for (const auto& v : qy.inputs) row.push_back(static_cast<int>(*v.smallInteger()));
        if (e.success) {
            for (const auto& v : e.outs) row.push_back(static_cast<int>(*v.smallInteger()));
            out.require(got.contains(row), "IR result not in lfp");
            ++tuples;
        } else {
            out.require(std::none_of(got.begin(), got.end(), [&](const auto& t) { return t[0] == row[0] && t[1] == row[1]; }),
                        "IR fails where lfp has a tuple");
        }
    }
    out.require(tuples == got.size(), "IR and lfp tuple counts differ");
    if (out.ok)
        out.detail = "m=58823529 u=" + r.outs[1].toString() + " depth=" + std::to_string(r.maxDepth) +
                     "; " + std::to_string(rep.checked) + " queries agree, " +
                     std::to_string(tuples) + " tuples";
    return out;
}

// --- 3 -------------------------------------------------------------------

Outcome theorems() {
    Outcome out;
    const int cases = 1000;
    testing::Rng rng(20261019);
    int counts[5] = {0, 0, 0, 0, 0};
    int modelsSeen = 0, nonModelsSeen = 0, nonEmptyLfp = 0, multiRound = 0;

    for (int i = 0; i < cases && out.ok; ++i) {
        auto rc = testing::randomCase(rng);
        const Program& P = rc.program;
        const Structure& S = rc.structure;
        Oracle oracle(P, rc.n);
        std::string where = " (case " + std::to_string(i) + ")\n" + prettyPrint(P);

        // (a) monotonicity, both evaluators
        auto lo = testing::randomInterpretation(rng, P, S, rc.extensional, 0.3);
        auto hi = unite(lo, testing::randomInterpretation(rng, P, S, rc.extensional, 0.3));
        for (Evaluator e : {Evaluator::Naive, Evaluator::Binding}) {
            auto a = step(P, lo, S, e), b = step(P, hi, S, e);
            out.require(leq(a, b), "(a) T_P not monotone" + where);
            out.require(toOracle(a) == oracle.step(toOracle(lo)), "(a) T_P differs from oracle" + where);
        }
        counts[0] += out.ok;

        // (b) model ⟺ T_P(I) ⪯ I, (c) model ⟺ M(A_q) ⊇ M(B_q)
        auto J = testing::chance(rng, 0.5) ? testing::randomInterpretation(rng, P, S, rc.extensional, 0.7)
                                  : testing::randomModel(rng, P, S, rc.extensional, 0.2);
        bool truth = oracle.isModel(toOracle(J));
        (truth ? modelsSeen : nonModelsSeen)++;
        bool byFixpoint = false;
        try {
            byFixpoint = checkModelFixpointEquivalence(P, J, S);
        } catch (const Error& e) {
            out.require(false, std::string("(b) ") + e.what() + where);
        }
        out.require(byFixpoint == truth, "(b) verdict differs from Def. 4.8" + where);
        out.require(leq(step(P, J, S, Evaluator::Naive), J) == truth, "(b) T_P(I) <= I differs" + where);
        counts[1] += out.ok;

        bool inclusion = true;
        for (const auto& c : P.clauses()) {
            auto vars = c.headVariables();
            std::set<Tuple, TupleLess> head;
            for (const auto& alpha : relationOf(c.head, vars, J, S)) head.insert(compose(alpha, vars));
            for (const auto& alpha : relationOf(c.body, vars, J, S)) inclusion &= head.contains(compose(alpha, vars));
        }
        out.require(inclusion == truth, "(c) inclusion test differs from Def. 4.8" + where);
        out.require(isModel(P, J, S).model == truth, "(c) isModel differs from Def. 4.8" + where);
        counts[2] += out.ok;

        // (d) intersection of models
        auto m1 = testing::randomModel(rng, P, S, rc.extensional, 0.3);
        auto m2 = testing::randomModel(rng, P, S, rc.extensional, 0.3);
        out.require(oracle.isModel(toOracle(m1)) && oracle.isModel(toOracle(m2)), "(d) generator gave a non-model" + where);
        std::vector<Interpretation> pair{m1, m2};
        auto both = intersect(pair);
        out.require(oracle.isModel(toOracle(both)), "(d) intersection is not a model" + where);
        out.require(isModel(P, both, S).model, "(d) isModel rejects the intersection" + where);
        counts[3] += out.ok;

        // (e) lfp below every model
        FixpointResult r = lfp(P, S, {}, &rc.extensional);
        out.require(r.status == FixpointStatus::ReachedFixpoint, "(e) no fixpoint" + where);
        nonEmptyLfp += r.interpretation.totalSize() > rc.extensional.totalSize();
        multiRound += r.iterations > 2;
        out.require(toOracle(r.interpretation) == oracle.lfp(toOracle(rc.extensional)), "(e) lfp differs from oracle" + where);
        for (const auto& m : {m1, m2, J})
            if (oracle.isModel(toOracle(m))) out.require(leq(r.interpretation, m), "(e) lfp not below a model" + where);
        counts[4] += out.ok;
    }
    out.require(modelsSeen > 50 && nonModelsSeen > 50, "(b) too few models or non-models sampled");
    if (out.ok) {
        out.detail = "(a)-(e) " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
                     std::to_string(counts[2]) + "/" + std::to_string(counts[3]) + "/" +
                     std::to_string(counts[4]) + " cases; " + std::to_string(modelsSeen) + " models, " +
                     std::to_string(nonModelsSeen) + " non-models in (b); " + std::to_string(nonEmptyLfp) +
                     " non-empty lfps, " + std::to_string(multiRound) + " needing > 2 rounds";
    }
    return out;
}

// --- 4 -------------------------------------------------------------------

bool evaluatorsAgree(const Program& P, const Structure& S, const Interpretation& start, std::string& why) {
    Interpretation cur = start;
    for (int round = 0; round < 200; ++round) {
        Interpretation n = stepNaive(P, cur, S);
        Interpretation b = stepBinding(P, cur, S);
        if (!(n == b)) {
            why = "steps differ in round " + std::to_string(round + 1);
            return false;
        }
        if (n == cur) return true;
        cur = std::move(n);
    }
    why = "no fixpoint within 200 rounds";
    return false;
}

Outcome evaluators() {
    Outcome out;
    int programs = 0;
    for (const auto& name : {"evenOdd", "sortSpec", "sortMerge", "deBruijn"}) {
        Loaded l = load(name);
        std::string why;
        out.require(evaluatorsAgree(l.program, l.structure, bottomWith(l.program, l.structure), why),
                    std::string(name) + ": " + why);
        ++programs;
    }
    testing::Rng rng(424242);
    int random = 0;
    for (int i = 0; i < 500 && out.ok; ++i) {
        auto rc = testing::randomCase(rng);
        auto J = testing::randomInterpretation(rng, rc.program, rc.structure, rc.extensional, 0.4);
        out.require(stepNaive(rc.program, J, rc.structure) == stepBinding(rc.program, J, rc.structure),
                    "random program " + std::to_string(i) + " differs on a random I\n" + prettyPrint(rc.program));
        std::string why;
        out.require(evaluatorsAgree(rc.program, rc.structure, rc.extensional, why),
                    "random program " + std::to_string(i) + ": " + why + "\n" + prettyPrint(rc.program));
        random += out.ok;
    }
    if (out.ok)
        out.detail = std::to_string(programs) + " stdlib programs from bottom to fixpoint, " + std::to_string(random) +
                     " random programs; every round tuple-exact";
    return out;
}

// --- 5 -------------------------------------------------------------------

std::vector<char> letters(const Value& list) {
    std::vector<char> out;
    const Value* cur = &list;
    while (cur->functor() == "cons") {
        out.push_back(cur->args()[0].functor()[0]);
        cur = &cur->args()[1];
    }
    return out;
}

Value fromLetters(const std::vector<char>& xs) {
    Value v = Value::symbol("nil");
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) v = Value::symbol("cons", {Value::symbol(std::string(1, *it)), v});
    return v;
}

Outcome sorting() {
    Outcome out;
    Loaded perm = load("sortSpec");
    Loaded merge = load("sortMerge");
    Interpretation a = lfp(perm.program, perm.structure, {}).interpretation;
    Interpretation b = lfp(merge.program, merge.structure, {}).interpretation;
    out.require(a.relation("sort") == b.relation("sort"), "sort relations differ");

    std::vector<std::vector<char>> inputs;
    for (int len = 1; len <= 4; ++len)
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::vector<char> xs;
            for (int k = 0; k < len; ++k) xs.push_back(bits >> k & 1 ? 'b' : 'a');
            inputs.push_back(xs);
        }
    out.require(inputs.size() == 30, "expected 30 input lists");

    ModeTable modes = merge.pack.modes(merge.program);
    ProcUnit unit = lower(merge.program, modes, merge.structure);
    std::size_t checked = 0;
    for (const auto& xs : inputs) {
        auto sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        Value in = fromLetters(xs), want = fromLetters(sorted);
        Atom query{"sort", {Term::variable("W"), Term::variable("R")}, {}};
        for (const Interpretation* m : {&a, &b}) {
            std::vector<Value> answers;
            for (const auto& alpha : relationOf(query, {"W", "R"}, *m, perm.structure))
                if (alpha.at("W") == in) answers.push_back(alpha.at("R"));
            out.require(answers.size() == 1 && answers[0] == want,
                        "sort(" + in.toString() + ", W) does not give " + want.toString());
        }
        ExecResult r = execute(unit, "sort", {in}, merge.structure);
        out.require(r.success && r.outs[0] == want && letters(r.outs[0]) == sorted,
                    "IR sort(" + in.toString() + ") wrong");
        ++checked;
    }
    if (out.ok)
        out.detail = std::to_string(a.relation("sort").size()) + " sort tuples agree; " + std::to_string(checked) +
                     " queries match std::sort";
    return out;
}

// --- 6 -------------------------------------------------------------------

Outcome evenOdd() {
    Outcome out;
    Loaded l = load("evenOdd");
    testing::ORel evens, odds;
    for (int x = 0; x <= 20; ++x) (x % 2 == 0 ? evens : odds).insert({x});
    for (Evaluator e : {Evaluator::Naive, Evaluator::Binding}) {
        FixpointConfig cfg;
        cfg.evaluator = e;
        FixpointResult r = lfp(l.program, l.structure, cfg);
        out.require(r.status == FixpointStatus::ReachedFixpoint, "fixpoint not reached");
        auto o = toOracle(r.interpretation);
        out.require(o.at("even") == evens && evens.size() == 11, "even differs from parity oracle");
        out.require(o.at("odd") == odds && odds.size() == 10, "odd differs from parity oracle");
        Interpretation golden = parseRelationData(l.pack.fixture("expected.rdata")->text, l.program.signature(),
                                                  l.structure);
        out.require(golden == r.interpretation, "differs from expected.rdata");
        if (out.ok) out.detail = "even 11, odd 10 tuples; fixpoint in " + std::to_string(r.iterations) + " rounds";
    }
    return out;
}

// --- 7 -------------------------------------------------------------------

Outcome golden() {
    Outcome out;
    Loaded l = load("deBruijn");
    std::string text = render(lower(l.program, l.pack.modes(l.program), l.structure));
    std::string want = readFile(std::string(RELKIT_FIXTURES_DIR) + "/deBruijn.golden");
    out.require(!want.empty(), "golden file missing");
    out.require(text == want, "rendering differs from deBruijn.golden");

    testing::Rng rng(77);
    int trips = 0;
    for (int i = 0; i < 1000 && out.ok; ++i) {
        Program p = testing::randomAst(rng);
        std::string printed = prettyPrint(p);
        auto r = parseProgram(printed);
        out.require(r.ok() && r.program == p, "round trip failed on:\n" + printed);
        trips += out.ok;
    }
    if (out.ok) out.detail = "golden matches (" + std::to_string(want.size()) + " bytes); " + std::to_string(trips) + " ASTs round-trip";
    return out;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "newton-sqrt2", 1, newton},
        {2, "debruijn-execution", 1e9, deBruijn},
        {3, "theorem-suite", 60, theorems},
        {4, "evaluator-equivalence", 60, evaluators},
        {5, "sort-permutation-vs-merge", 30, sorting},
        {6, "even-odd-golden", 1, evenOdd},
        {7, "golden-transpile", 1e9, golden},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs >= c.budgetSeconds) {
            o.ok = false;
            o.detail = "over the " + std::to_string(c.budgetSeconds) + " s budget";
        }
        std::printf("%s %d %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
