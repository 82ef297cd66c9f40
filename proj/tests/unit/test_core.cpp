#include <random>

#include "doctest.h"
#include "relkit/ast.h"
#include "relkit/parser.h"
#include "relkit/tuple.h"
#include "relkit/value.h"

using namespace relkit;

namespace {

std::vector<std::string> codes(const std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    for (const auto& d : diags) out.push_back(d.code);
    return out;
}

Program evenOdd() {
    auto r = parseProgram(
        "func s/1; pred even/1, odd/1;\n"
        "even(x) <- x = 0 \\/ exists y. x = s(y) /\\ odd(y);\n"
        "odd(x) <- x = s(0) \\/ exists y. x = s(y) /\\ even(y);\n");
    REQUIRE(r.ok());
    return r.program;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("validate accepts the even/odd program") {
    CHECK(validate(evenOdd()).empty());
}

TEST_CASE("validate flags a repeated head variable") {
    Signature sig;
    sig.declarePredicate("p", 2);
    Program p(sig);
    Clause c;
    c.head = Atom{"p", {Term::variable("x"), Term::variable("x")}, {}};
    c.body.push_back(Disjunct{{}, {Atom{"=", {Term::variable("x"), Term::constant("0")}, {}}}, {}});
    p.addClause(c);
    CHECK(codes(validate(p)) == std::vector<std::string>{"RepeatedHeadVariable"});
}

TEST_CASE("validate flags an unquantified body variable") {
    Signature sig;
    sig.declarePredicate("p", 1);
    sig.declarePredicate("q", 2);
    Program p(sig);
    Clause c;
    c.head = Atom{"p", {Term::variable("x")}, {}};
    c.body.push_back(Disjunct{{}, {Atom{"q", {Term::variable("x"), Term::variable("y")}, {}}}, {}});
    p.addClause(c);
    CHECK(codes(validate(p)) == std::vector<std::string>{"UnquantifiedBodyVariable"});
}

TEST_CASE("validate flags other shape errors") {
    Signature sig;
    sig.declarePredicate("p", 1);
    sig.declareConstant("c");
    Program p(sig);
    Clause c;
    c.head = Atom{"p", {Term::constant("c")}, {}};
    c.body.push_back(Disjunct{{"y"}, {Atom{"true", {}, {}}}, {}});
    p.addClause(c);
    auto found = codes(validate(p));
    CHECK(std::find(found.begin(), found.end(), "HeadArgumentNotVariable") != found.end());
    CHECK(std::find(found.begin(), found.end(), "UnusedExistential") != found.end());
}

TEST_CASE("the empty program is valid") {
    CHECK(validate(Program{}).empty());
}

TEST_CASE("freeVariables") {
    CHECK(freeVariables(Term::apply("s", {Term::apply("s", {Term::variable("x")})})) ==
          std::set<std::string>{"x"});
    Program p = evenOdd();
    const Disjunct& d = p.clauseFor("even")->body[1];
    CHECK(freeVariables(d) == std::set<std::string>{"x"});
    Atom q{"q", {Term::variable("a"), Term::variable("b"), Term::variable("m"), Term::variable("u")}, {}};
    CHECK(freeVariables(q) == std::set<std::string>{"a", "b", "m", "u"});
    CHECK(freeVariables(*p.clauseFor("odd")) == std::set<std::string>{"x"});
}

TEST_CASE("addClause merges alternatives under the first head's variables") {
    auto r = parseProgram("func s/1; pred p/1; p(x) <- x = 0; p(y) <- y = s(0);");
    REQUIRE(r.ok());
    const Clause* c = r.program.clauseFor("p");
    REQUIRE(c);
    REQUIRE(c->body.size() == 2);
    CHECK(freeVariables(c->body[1]) == std::set<std::string>{"x"});
}

TEST_CASE("reindex views a tuple through head variables") {
    Tuple t{Value::symbol("b"), Value::symbol("c"), Value::symbol("c")};
    Assignment a = reindex(t, {"x", "y", "z"});
    CHECK(a.size() == 3);
    CHECK(a.at("x") == Value::symbol("b"));
    CHECK(a.at("y") == Value::symbol("c"));
    CHECK(a.at("z") == Value::symbol("c"));
    CHECK(reindex(Tuple{}, {}).empty());
    CHECK_THROWS_AS(reindex(t, {"x", "y"}), TupleError);
    CHECK_THROWS_AS(reindex(t, {"x", "x", "z"}), TupleError);
}

TEST_CASE("compose inverts reindex on random tuples") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = rng() % 6;
        Tuple t;
        std::vector<std::string> vars;
        for (std::size_t k = 0; k < n; ++k) {
            t.push_back(Value::integer(static_cast<std::int64_t>(rng() % 5)));
            vars.push_back("v" + std::to_string(k));
        }
        std::shuffle(vars.begin(), vars.end(), rng);
        CHECK(compose(reindex(t, vars), vars) == t);
    }
}

TEST_CASE("exact numbers are canonical") {
    CHECK(Value::rational(mpq_class(6, 3)) == Value::integer(2));
    CHECK(Value::rational(mpq_class(6, 3)).kind() == Value::Kind::Integer);
    CHECK(Value::rational(mpq_class(3, 6)).toString() == "1/2");
    Applied h = arith::div(Value::integer(1), Value::integer(2));
    REQUIRE(h.defined());
    CHECK(h.value == Value::rational(mpq_class(1, 2)));
    CHECK_FALSE(arith::div(Value::integer(1), Value::integer(0)).defined());
    CHECK(arith::add(Value::integer(1), Value::symbol("a")).status == Applied::Status::KindMismatch);
}

TEST_CASE("floats compare bitwise and print round-trippably") {
    CHECK(Value::floating(0.1) == Value::floating(0.1));
    CHECK_FALSE(Value::floating(0.0) == Value::floating(-0.0));
    CHECK(formatFloat(8.1) == "8.1");
    CHECK(formatFloat(2.0).find('.') != std::string::npos);
}

}  // TEST_SUITE
