#include <algorithm>
#include <random>

#include "doctest.h"
#include "relkit/errors.h"
#include "relkit/parser.h"
#include "support/random_programs.h"

using namespace relkit;

namespace {

bool hasCode(const std::vector<Diagnostic>& diags, const std::string& code) {
    return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

const char* kEvenOdd =
    "func s/1; pred even/1, odd/1;\n"
    "even(x) <- x = 0 \\/ exists y. x = s(y) /\\ odd(y);\n"
    "odd(x) <- x = s(0) \\/ exists y. x = s(y) /\\ even(y);\n";

const char* kDeBruijn =
    "func +/2, -/2, */2; pred q/4, aux/5, </2, <=/2;\n"
    "q(a, b, m, u) <- a < b /\\ m = 0 /\\ u = a\n"
    "  \\/ b <= a /\\ a < b+b /\\ m = 1 /\\ u = a-b\n"
    "  \\/ exists n, v. b+b <= a /\\ q(a, b+b, n, v) /\\ aux(b, m, u, n, v);\n"
    "aux(b, m, u, n, v) <- v < b /\\ m = 2*n /\\ u = v\n"
    "  \\/ b <= v /\\ m = 2*n+1 /\\ u = v-b;\n";

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("even clause") {
    auto r = parseProgram(kEvenOdd);
    REQUIRE(r.ok());
    const Clause* c = r.program.clauseFor("even");
    REQUIRE(c);
    CHECK(c->headVariables() == std::vector<std::string>{"x"});
    REQUIRE(c->body.size() == 2);
    CHECK(c->body[0].conjuncts[0] == Atom{"=", {Term::variable("x"), Term::constant("0")}, {}});
    CHECK(c->body[1].existentials == std::vector<std::string>{"y"});
    CHECK(c->body[1].conjuncts[0] ==
          Atom{"=", {Term::variable("x"), Term::apply("s", {Term::variable("y")})}, {}});
    CHECK(c->body[1].conjuncts[1] == Atom{"odd", {Term::variable("y")}, {}});
}

TEST_CASE("empty input is the empty program") {
    auto r = parseProgram("");
    CHECK(r.ok());
    CHECK(r.program.clauses().empty());
}

TEST_CASE("sort clause with a parenthesized base case") {
    auto r = parseProgram(
        "const nil; pred sort/2, split/3, merge/3;\n"
        "sort(v,w) <- (v = nil /\\ w = nil) \\/ exists v0,v1,w0,w1. split(v,v0,v1) /\\ "
        "sort(v0,w0) /\\ sort(v1,w1) /\\ merge(w0,w1,w);");
    REQUIRE(r.ok());
    const Clause* c = r.program.clauseFor("sort");
    REQUIRE(c);
    REQUIRE(c->body.size() == 2);
    CHECK(c->body[0].conjuncts.size() == 2);
    CHECK(c->body[1].existentials == std::vector<std::string>{"v0", "v1", "w0", "w1"});
    CHECK(c->body[1].conjuncts.back().predicate == "merge");
}

TEST_CASE("operator precedence") {
    auto r = parseProgram(kDeBruijn);
    REQUIRE(r.ok());
    const Atom& m = r.program.clauseFor("aux")->body[1].conjuncts[1];
    Term expected = Term::apply("+", {Term::apply("*", {Term::constant("2"), Term::variable("n")}),
                                      Term::constant("1")});
    CHECK(m.args[1] == expected);
}

TEST_CASE("syntax and declaration errors are diagnosed") {
    CHECK(hasCode(parseProgram("pred p/1; p(x) <- x = ;").diagnostics, "SyntaxError"));
    CHECK(hasCode(parseProgram("pred p/1; p(x) <- q(x);").diagnostics, "UnknownPredicate"));
    CHECK(hasCode(parseProgram("pred p/1; p(x, x) <- true;").diagnostics, "ArityMismatch"));
    CHECK(hasCode(parseProgram("func s/1; pred p/2; p(x, x) <- x = s(x);").diagnostics,
                  "RepeatedHeadVariable"));
    CHECK(hasCode(parseProgram("pred p/1, q/2; p(x) <- q(x, y);").diagnostics,
                  "UnquantifiedBodyVariable"));
}

TEST_CASE("printer output") {
    auto r = parseProgram(kEvenOdd);
    REQUIRE(r.ok());
    std::string text = prettyPrint(r.program);
    CHECK(text.find("even(x) <-\n    x = 0\n  \\/ exists y. x = s(y) /\\ odd(y);") != std::string::npos);
    CHECK(parseProgram(text).program == r.program);

    std::string empty = prettyPrint(parseProgram("func s/1; pred p/1;").program);
    CHECK(empty.find("func s/1;") != std::string::npos);
    CHECK(empty.find("<-") == std::string::npos);
}

TEST_CASE("de Bruijn program round-trips") {
    auto r = parseProgram(kDeBruijn);
    REQUIRE(r.ok());
    auto again = parseProgram(prettyPrint(r.program));
    REQUIRE(again.ok());
    CHECK(again.program == r.program);
}

TEST_CASE("random ASTs round-trip through the printer") {
    testing::Rng rng(20261019);
    for (int i = 0; i < 1000; ++i) {
        Program p = testing::randomAst(rng);
        std::string text = prettyPrint(p);
        auto r = parseProgram(text);
        INFO(text);
        REQUIRE(r.ok());
        REQUIRE(r.program == p);
    }
}

TEST_CASE("the parser never throws on arbitrary bytes") {
    testing::Rng rng(99);
    const std::string alphabet = "abxyz01(),;./\\<=->* \n#exists pred func const";
    std::string seed = kDeBruijn;
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        if (i % 2 == 0) {
            int len = testing::pick(rng, 0, 80);
            for (int k = 0; k < len; ++k) {
                text.push_back(i % 4 == 0 ? static_cast<char>(rng() % 256)
                                          : alphabet[rng() % alphabet.size()]);
            }
        } else {
            text = seed;
            int edits = testing::pick(rng, 1, 5);
            for (int k = 0; k < edits; ++k) {
                std::size_t at = rng() % text.size();
                if (rng() % 2) text.erase(at, 1 + rng() % 3);
                else text.insert(at, 1, alphabet[rng() % alphabet.size()]);
            }
        }
        CHECK_NOTHROW(parseProgram(text));
    }
}

TEST_CASE("parseAtom treats undeclared identifiers as variables") {
    auto r = parseProgram("const nil, a, b; func cons/2; pred sort/2;");
    Atom a = parseAtom("sort(cons(b, nil), W)", r.program.signature());
    CHECK(a.args[0] == Term::apply("cons", {Term::constant("b"), Term::constant("nil")}));
    CHECK(a.args[1] == Term::variable("W"));
    CHECK_THROWS_AS(parseAtom("sort(", r.program.signature()), FormatError);
}

TEST_CASE("relation data") {
    auto r = parseProgram("const nil; pred split/3, p/1;");
    REQUIRE(r.ok());
    const Signature& sig = r.program.signature();
    Structure S;
    S.domain = Domain::unbounded(Domain::Kind::Any);

    Interpretation I = parseRelationData("split: (nil, nil, nil).\n", sig, S);
    CHECK(I.relation("split").size() == 1);
    CHECK(I.contains("split", {Value::symbol("nil"), Value::symbol("nil"), Value::symbol("nil")}));
    CHECK(I.relation("p").empty());

    Interpretation dup = parseRelationData("p: (1).\np: (1).\n# c\np: (2).\n", sig, S);
    CHECK(dup.relation("p").size() == 2);

    try {
        parseRelationData("split: (nil, nil).\n", sig, S);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.code() == "ArityMismatch");
    }
    CHECK_THROWS_AS(parseRelationData("nope: (1).\n", sig, S), FormatError);
    CHECK_THROWS_AS(parseRelationData("p: (zz).\n", sig, S), FormatError);
}

TEST_CASE("relation data honours the domain") {
    auto r = parseProgram("pred p/1;");
    Structure S;
    S.domain = Domain::finite({Value::integer(0), Value::integer(1)});
    try {
        parseRelationData("p: (5).\n", r.program.signature(), S);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.code() == "ValueOutsideDomain");
    }
}

}  // TEST_SUITE
