#include "relkit/parser.h"

#include <set>

#include "lexer.h"
#include "literal.h"
#include "relkit/errors.h"

namespace relkit {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

struct SyntaxFailure {
    Diagnostic diagnostic;
};

bool isInfixFunction(std::string_view name) {
    return name == "+" || name == "-" || name == "*" || name == "/";
}

bool isInfixPredicate(std::string_view name) {
    return name == "=" || name == "<" || name == "<=" || name == ">" || name == ">=";
}

/// A parenthesized alternative list or a single atom inside a conjunction.
struct ConjItem {
    std::optional<Atom> atom;
    std::vector<Disjunct> group;
    SourceSpan span;
};

class ProgramParser {
public:
    ProgramParser(std::string_view text, const std::string& file)
        : ts_(detail::tokenize(text), file) {}

    // Query/condition mode: undeclared identifiers are variables.
    ProgramParser(std::string_view text, const Signature& signature)
        : ts_(detail::tokenize(text), ""), signatureOverride_(&signature) {}

    ParseOutcome parseAll() {
        ParseOutcome out;
        while (!ts_.at(Tok::End)) {
            std::size_t before = ts_.position();
            try {
                if (atDeclaration()) {
                    parseDeclaration();
                } else {
                    Clause c = parseClause();
                    pendingClauses_.push_back(std::move(c));
                }
            } catch (const SyntaxFailure& f) {
                diags_.push_back(f.diagnostic);
                recover(before);
            }
        }
        Program program(signature_);
        for (auto& c : pendingClauses_) program.addClause(std::move(c));
        out.program = std::move(program);
        if (diags_.empty()) {
            out.diagnostics = validate(out.program);
        } else {
            out.diagnostics = std::move(diags_);
        }
        return out;
    }

    Atom parseSingleAtom() {
        auto items = parseConjunctionItems();
        if (items.size() != 1 || !items.front().atom) fail(ts_.peek(), "expected a single atom");
        expectEnd();
        return *items.front().atom;
    }

    std::vector<Atom> parseAtomConjunction() {
        auto items = parseConjunctionItems();
        std::vector<Atom> atoms;
        for (auto& item : items) {
            if (!item.atom) fail(ts_.peek(), "expected atoms joined by '/\\'");
            atoms.push_back(std::move(*item.atom));
        }
        expectEnd();
        return atoms;
    }

private:
    const Signature& sig() const { return signatureOverride_ ? *signatureOverride_ : signature_; }

    [[noreturn]] void fail(const Token& at, const std::string& message) {
        throw SyntaxFailure{{"SyntaxError", message, "", ts_.spanOf(at)}};
    }

    void expect(Tok k, const char* context) {
        if (!ts_.accept(k)) {
            fail(ts_.peek(), std::string("expected ") + detail::describe(k) + " " + context +
                                 ", found " + detail::describe(ts_.peek().kind));
        }
    }

    void expectEnd() {
        if (!ts_.at(Tok::End)) fail(ts_.peek(), "unexpected trailing input");
    }

    void recover(std::size_t before) {
        if (ts_.position() == before) ts_.next();
        while (!ts_.at(Tok::End) && !ts_.at(Tok::Semi)) ts_.next();
        ts_.accept(Tok::Semi);
    }

    bool atDeclaration() const {
        if (!ts_.at(Tok::Ident)) return false;
        const auto& w = ts_.peek().text;
        if (w != "const" && w != "func" && w != "pred") return false;
        Tok after = ts_.peek(1).kind;
        return after != Tok::LParen && after != Tok::Implies;
    }

    std::string parseSymbolName() {
        const Token& t = ts_.peek();
        if (t.kind == Tok::Ident || (detail::isOperatorToken(t.kind) && t.kind != Tok::Eq)) {
            return ts_.next().text;
        }
        fail(t, std::string("expected a symbol name, found ") + detail::describe(t.kind));
    }

    std::size_t parseArity() {
        const Token& t = ts_.peek();
        if (t.kind != Tok::Number || t.text.find('.') != std::string::npos || t.text.size() > 6)
            fail(t, "expected an arity");
        return static_cast<std::size_t>(std::stoul(ts_.next().text));
    }

    void parseDeclaration() {
        const Token kw = ts_.next();
        do {
            const Token start = ts_.peek();
            std::optional<Diagnostic> problem;
            if (kw.text == "const") {
                const Token& t = ts_.peek();
                if (t.kind != Tok::Ident) fail(t, "expected a constant name");
                problem = signature_.declareConstant(ts_.next().text);
            } else {
                std::string name = parseSymbolName();
                expect(Tok::Slash, "between symbol and arity");
                std::size_t arity = parseArity();
                if (kw.text == "func") {
                    if (isInfixFunction(name) && arity != 2)
                        fail(start, "infix function '" + name + "' must be binary");
                    problem = signature_.declareFunction(name, arity);
                } else {
                    if (isInfixFunction(name)) fail(start, "'" + name + "' is reserved for functions");
                    if (isInfixPredicate(name) && arity != 2)
                        fail(start, "infix predicate '" + name + "' must be binary");
                    problem = signature_.declarePredicate(name, arity);
                }
            }
            if (problem) {
                problem->span = ts_.spanFrom(start);
                diags_.push_back(*problem);
            }
        } while (ts_.accept(Tok::Comma));
        expect(Tok::Semi, "after declaration");
    }

    Clause parseClause() {
        const Token start = ts_.peek();
        Clause clause;
        clause.head = parseHead();
        expect(Tok::Implies, "after clause head");
        clause.body = parseBody();
        expect(Tok::Semi, "at end of clause");
        clause.span = ts_.spanFrom(start);
        return clause;
    }

    Atom parseHead() {
        const Token start = ts_.peek();
        if (start.kind != Tok::Ident) fail(start, "expected a predicate name");
        Atom head;
        head.predicate = ts_.next().text;
        if (ts_.accept(Tok::LParen)) {
            if (!ts_.accept(Tok::RParen)) {
                do {
                    head.args.push_back(parseTerm());
                } while (ts_.accept(Tok::Comma));
                expect(Tok::RParen, "to close head arguments");
            }
        }
        head.span = ts_.spanFrom(start);
        return head;
    }

    std::vector<Disjunct> parseBody() {
        std::vector<Disjunct> out;
        do {
            for (auto& d : parseAlternative()) out.push_back(std::move(d));
        } while (ts_.accept(Tok::Or));
        return out;
    }

    std::vector<Disjunct> parseAlternative() {
        const Token start = ts_.peek();
        std::vector<std::string> existentials;
        if (ts_.atIdent("exists") && ts_.peek(1).kind == Tok::Ident) {
            ts_.next();
            do {
                const Token& v = ts_.peek();
                if (v.kind != Tok::Ident) fail(v, "expected a variable name");
                existentials.push_back(ts_.next().text);
            } while (ts_.accept(Tok::Comma));
            expect(Tok::Dot, "after existential variables");
        }
        auto items = parseConjunctionItems();

        if (items.size() == 1 && !items.front().atom) {
            auto group = std::move(items.front().group);
            if (existentials.empty()) return group;
            if (group.size() != 1)
                fail(start, "an existential cannot scope over several alternatives");
            for (auto& e : group.front().existentials) existentials.push_back(e);
            group.front().existentials = std::move(existentials);
            group.front().span = ts_.spanFrom(start);
            return group;
        }

        Disjunct d;
        d.existentials = std::move(existentials);
        for (auto& item : items) {
            if (item.atom) {
                d.conjuncts.push_back(std::move(*item.atom));
                continue;
            }
            if (item.group.size() != 1 || !item.group.front().existentials.empty()) {
                throw SyntaxFailure{{"NestedDisjunction",
                                     "alternatives and existentials cannot be nested inside a conjunction",
                                     "", item.span}};
            }
            for (auto& a : item.group.front().conjuncts) d.conjuncts.push_back(std::move(a));
        }
        d.span = ts_.spanFrom(start);
        return {std::move(d)};
    }

    std::vector<ConjItem> parseConjunctionItems() {
        std::vector<ConjItem> items;
        do {
            items.push_back(parseConjunct());
        } while (ts_.accept(Tok::And));
        return items;
    }

    ConjItem parseConjunct() {
        const Token start = ts_.peek();
        if (start.kind == Tok::LParen) {
            // Either a parenthesized term starting an infix atom, or a group.
            std::size_t mark = ts_.position();
            try {
                ConjItem item;
                item.atom = parseAtomFromTerm();
                if (isAtomBoundary()) return item;
            } catch (const SyntaxFailure&) {
            }
            ts_.reset(mark);
            ts_.next();
            ConjItem item;
            item.group = parseBody();
            expect(Tok::RParen, "to close group");
            item.span = ts_.spanFrom(start);
            return item;
        }
        ConjItem item;
        item.atom = parseAtomFromTerm();
        return item;
    }

    bool isAtomBoundary() const {
        Tok k = ts_.peek().kind;
        return k == Tok::And || k == Tok::Or || k == Tok::Semi || k == Tok::RParen || k == Tok::End;
    }

    Atom parseAtomFromTerm() {
        const Token start = ts_.peek();
        if (ts_.atIdent("true") || ts_.atIdent("false")) {
            Atom a;
            a.predicate = ts_.next().text;
            if (ts_.accept(Tok::LParen)) expect(Tok::RParen, "after nullary predicate");
            a.span = ts_.spanFrom(start);
            return a;
        }
        Term lhs = parseTerm();
        Tok k = ts_.peek().kind;
        if (k == Tok::Eq || k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge) {
            Atom a;
            a.predicate = ts_.next().text;
            a.args.push_back(std::move(lhs));
            a.args.push_back(parseTerm());
            a.span = ts_.spanFrom(start);
            return a;
        }
        // A predicate atom parsed as a term: p, p(), p(t0, ..., tk).
        if (lhs.kind == Term::Kind::Application || (start.kind == Tok::Ident && !sig().functionArity(lhs.name))) {
            if (lhs.kind != Term::Kind::Application && !isBareIdentifier(start)) {
                fail(start, "expected an atom");
            }
            if (isInfixFunction(lhs.name)) fail(start, "expected an atom, found an arithmetic term");
            Atom a;
            a.predicate = lhs.name;
            a.args = std::move(lhs.args);
            a.span = ts_.spanFrom(start);
            return a;
        }
        fail(start, "expected an atom");
    }

    bool isBareIdentifier(const Token& start) const {
        return start.kind == Tok::Ident && ts_.previous().line == start.line &&
               ts_.previous().col == start.col;
    }

    // term := mul (('+'|'-') mul)*
    Term parseTerm() {
        const Token start = ts_.peek();
        Term lhs = parseProduct();
        while (ts_.at(Tok::Plus) || ts_.at(Tok::Minus)) {
            std::string op = ts_.next().text;
            Term rhs = parseProduct();
            lhs = Term::apply(op, {std::move(lhs), std::move(rhs)});
            lhs.span = ts_.spanFrom(start);
        }
        return lhs;
    }

    Term parseProduct() {
        const Token start = ts_.peek();
        Term lhs = parsePrimary();
        while (ts_.at(Tok::Star) || ts_.at(Tok::Slash)) {
            std::string op = ts_.next().text;
            Term rhs = parsePrimary();
            lhs = Term::apply(op, {std::move(lhs), std::move(rhs)});
            lhs.span = ts_.spanFrom(start);
        }
        return lhs;
    }

    Term parsePrimary() {
        const Token start = ts_.peek();
        switch (start.kind) {
            case Tok::Number: {
                Term t = Term::constant(ts_.next().text);
                t.span = ts_.spanFrom(start);
                return t;
            }
            case Tok::Minus: {
                ts_.next();
                if (!ts_.at(Tok::Number)) fail(ts_.peek(), "expected a number after unary '-'");
                Term t = Term::constant("-" + ts_.next().text);
                t.span = ts_.spanFrom(start);
                return t;
            }
            case Tok::FloatLit:
                fail(start, "exponent and hex-float numerals are not allowed in programs");
            case Tok::LParen: {
                ts_.next();
                Term t = parseTerm();
                expect(Tok::RParen, "to close parenthesized term");
                return t;
            }
            case Tok::Ident: {
                std::string name = ts_.next().text;
                if (ts_.accept(Tok::LParen)) {
                    std::vector<Term> args;
                    if (!ts_.accept(Tok::RParen)) {
                        do {
                            args.push_back(parseTerm());
                        } while (ts_.accept(Tok::Comma));
                        expect(Tok::RParen, "to close argument list");
                    }
                    Term t = Term::apply(std::move(name), std::move(args));
                    t.span = ts_.spanFrom(start);
                    return t;
                }
                Term t = sig().isConstant(name) ? Term::constant(std::move(name))
                                                : Term::variable(std::move(name));
                t.span = ts_.spanFrom(start);
                return t;
            }
            default:
                fail(start, std::string("expected a term, found ") + detail::describe(start.kind));
        }
    }

    TokenStream ts_;
    const Signature* signatureOverride_ = nullptr;
    Signature signature_;
    std::vector<Clause> pendingClauses_;
    std::vector<Diagnostic> diags_;
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const Term& t) {
    if (t.kind == Term::Kind::Application && t.args.size() == 2) {
        if (t.name == "+" || t.name == "-") return 1;
        if (t.name == "*" || t.name == "/") return 2;
    }
    return 3;
}

void printTerm(const Term& t, std::string& out, bool inOperand) {
    switch (t.kind) {
        case Term::Kind::Variable: out += t.name; return;
        case Term::Kind::Constant:
            if (inOperand && !t.name.empty() && t.name[0] == '-') {
                out += "(" + t.name + ")";
            } else {
                out += t.name;
            }
            return;
        case Term::Kind::Application: {
            int p = precedence(t);
            if (p < 3) {
                const Term& l = t.args[0];
                const Term& r = t.args[1];
                bool parenL = precedence(l) < p;
                bool parenR = precedence(r) <= p;
                if (parenL) out += "(";
                printTerm(l, out, !parenL);
                if (parenL) out += ")";
                out += t.name;
                if (parenR) out += "(";
                printTerm(r, out, !parenR);
                if (parenR) out += ")";
                return;
            }
            out += t.name;
            out += "(";
            for (std::size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ", ";
                printTerm(t.args[i], out, false);
            }
            out += ")";
            return;
        }
    }
}

void printAtom(const Atom& a, std::string& out) {
    if (isInfixPredicate(a.predicate) && a.args.size() == 2) {
        printTerm(a.args[0], out, false);
        out += " " + a.predicate + " ";
        printTerm(a.args[1], out, false);
        return;
    }
    out += a.predicate;
    if (a.predicate == "true" || a.predicate == "false") return;
    out += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        printTerm(a.args[i], out, false);
    }
    out += ")";
}

void printDisjunct(const Disjunct& d, std::string& out) {
    if (!d.existentials.empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < d.existentials.size(); ++i) {
            if (i) out += ", ";
            out += d.existentials[i];
        }
        out += ". ";
    }
    for (std::size_t i = 0; i < d.conjuncts.size(); ++i) {
        if (i) out += " /\\ ";
        printAtom(d.conjuncts[i], out);
    }
}

void printSymbolList(const char* keyword,
                     const std::vector<std::pair<std::string, std::size_t>>& symbols,
                     std::string& out) {
    if (symbols.empty()) return;
    out += keyword;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out += i ? ", " : " ";
        out += symbols[i].first + "/" + std::to_string(symbols[i].second);
    }
    out += ";\n";
}

// ---------------------------------------------------------------------------
// Relation data

class DataParser {
public:
    DataParser(std::string_view text, const Signature& sig, const Structure& structure,
               const std::string& file)
        : ts_(detail::tokenize(text), file), sig_(sig), structure_(structure) {}

    Interpretation run() {
        Interpretation I = Interpretation::bottom(sig_, structure_.functions);
        while (!ts_.at(Tok::End)) {
            std::size_t before = ts_.position();
            try {
                statement(I);
            } catch (const SyntaxFailure& f) {
                diags_.push_back(f.diagnostic);
                if (ts_.position() == before) ts_.next();
                while (!ts_.at(Tok::End) && !ts_.at(Tok::Dot)) ts_.next();
                ts_.accept(Tok::Dot);
            }
        }
        if (!diags_.empty()) throw FormatError(std::move(diags_));
        return I;
    }

private:
    [[noreturn]] void fail(std::string code, const Token& at, const std::string& message) {
        throw SyntaxFailure{{std::move(code), message, "", ts_.spanOf(at)}};
    }

    void statement(Interpretation& I) {
        const Token start = ts_.peek();
        if (start.kind != Tok::Ident && !(detail::isOperatorToken(start.kind) && start.kind != Tok::Eq))
            fail("SyntaxError", start, "expected a predicate name");
        std::string q = ts_.next().text;
        auto arity = sig_.predicateArity(q);
        if (!arity || Signature::isReservedPredicate(q))
            fail("UnknownPredicate", start, "unknown predicate '" + q + "'");
        if (structure_.functions.relation(q))
            fail("UnknownPredicate", start, "'" + q + "' is a builtin relation and holds no data");
        if (!ts_.accept(Tok::Colon)) fail("SyntaxError", ts_.peek(), "expected ':' after predicate");
        if (!ts_.accept(Tok::LParen)) fail("SyntaxError", ts_.peek(), "expected '('");
        Tuple t;
        if (!ts_.accept(Tok::RParen)) {
            do {
                t.push_back(value());
            } while (ts_.accept(Tok::Comma));
            if (!ts_.accept(Tok::RParen)) fail("SyntaxError", ts_.peek(), "expected ')'");
        }
        if (!ts_.accept(Tok::Dot)) fail("SyntaxError", ts_.peek(), "expected '.' after tuple");
        if (t.size() != *arity) {
            fail("ArityMismatch", start,
                 "predicate '" + q + "' has arity " + std::to_string(*arity) + ", tuple has " +
                     std::to_string(t.size()) + " values");
        }
        I.insert(q, std::move(t));
    }

    Value value() {
        const Token start = ts_.peek();
        Value v;
        if (start.kind == Tok::Ident) {
            std::string name = ts_.next().text;
            Applied r;
            if (ts_.accept(Tok::LParen)) {
                std::vector<Value> args;
                if (!ts_.accept(Tok::RParen)) {
                    do {
                        args.push_back(value());
                    } while (ts_.accept(Tok::Comma));
                    if (!ts_.accept(Tok::RParen)) fail("SyntaxError", ts_.peek(), "expected ')'");
                }
                auto arity = sig_.functionArity(name);
                if (!arity) fail("UnknownFunction", start, "unknown function '" + name + "'");
                if (*arity != args.size())
                    fail("ArityMismatch", start, "function '" + name + "' arity mismatch");
                r = structure_.functions.apply(name, args);
            } else {
                if (!sig_.isConstant(name)) fail("UnknownConstant", start, "unknown constant '" + name + "'");
                r = structure_.functions.constant(name);
            }
            if (!r.defined()) fail("UndefinedValue", start, "term has no value in this structure");
            v = r.value;
        } else if (auto numeral = plainNumeral()) {
            Applied r = structure_.functions.constant(*numeral);
            if (!r.defined()) fail("UndefinedValue", start, "numeral " + *numeral + " has no value in this structure");
            v = r.value;
        } else {
            std::vector<Diagnostic> local;
            auto lit = detail::readValue(ts_, local);
            if (!lit) throw SyntaxFailure{local.front()};
            v = *lit;
        }
        if (!structure_.domain.contains(v))
            fail("ValueOutsideDomain", start, "value " + v.toString() + " is not in the domain");
        return v;
    }

    // A decimal numeral not followed by '/': read through the numeral policy.
    std::optional<std::string> plainNumeral() {
        std::size_t i = ts_.at(Tok::Minus) ? 1 : 0;
        const Token& n = ts_.peek(i);
        if (n.kind != Tok::Number || ts_.peek(i + 1).kind == Tok::Slash) return std::nullopt;
        std::string text = (i ? "-" : "") + n.text;
        ts_.next();
        if (i) ts_.next();
        return text;
    }

    TokenStream ts_;
    const Signature& sig_;
    const Structure& structure_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

ParseOutcome parseProgram(std::string_view text, const std::string& file) {
    return ProgramParser(text, file).parseAll();
}

std::string prettyPrint(const Term& term) {
    std::string out;
    printTerm(term, out, false);
    return out;
}

std::string prettyPrint(const Atom& atom) {
    std::string out;
    printAtom(atom, out);
    return out;
}

std::string prettyPrint(const Disjunct& disjunct) {
    std::string out;
    printDisjunct(disjunct, out);
    return out;
}

std::string prettyPrint(const Program& program) {
    std::string out;
    const auto& sig = program.signature();
    if (!sig.constants().empty()) {
        out += "const";
        for (std::size_t i = 0; i < sig.constants().size(); ++i) {
            out += i ? ", " : " ";
            out += sig.constants()[i];
        }
        out += ";\n";
    }
    printSymbolList("func", sig.functions(), out);
    printSymbolList("pred", sig.predicates(), out);
    for (const auto& clause : program.clauses()) {
        out += "\n";
        out += clause.head.predicate + "(";
        for (std::size_t i = 0; i < clause.head.args.size(); ++i) {
            if (i) out += ", ";
            printTerm(clause.head.args[i], out, false);
        }
        out += ") <-";
        for (std::size_t i = 0; i < clause.body.size(); ++i) {
            out += i ? "\n  \\/ " : "\n    ";
            printDisjunct(clause.body[i], out);
        }
        out += ";\n";
    }
    return out;
}

Atom parseAtom(std::string_view text, const Signature& signature) {
    try {
        return ProgramParser(text, signature).parseSingleAtom();
    } catch (const SyntaxFailure& f) {
        throw FormatError({f.diagnostic});
    }
}

std::vector<Atom> parseConjunction(std::string_view text, const Signature& signature) {
    try {
        return ProgramParser(text, signature).parseAtomConjunction();
    } catch (const SyntaxFailure& f) {
        throw FormatError({f.diagnostic});
    }
}

Interpretation parseRelationData(std::string_view text, const Signature& signature,
                                 const Structure& structure, const std::string& file) {
    return DataParser(text, signature, structure, file).run();
}

}  // namespace relkit
