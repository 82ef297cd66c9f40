#include "relkit/structure.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "lexer.h"
#include "literal.h"
#include "relkit/errors.h"

namespace relkit {

namespace {

Applied unaryNumeric(std::span<const Value> args, Applied (*op)(const Value&, const Value&),
                     std::int64_t rhs) {
    return op(args[0], Value::integer(rhs));
}

std::optional<std::vector<Value>> invertByArithmetic(const Value& result,
                                                     Applied (*op)(const Value&, const Value&),
                                                     std::int64_t rhs) {
    auto r = op(result, Value::integer(rhs));
    if (!r.defined()) return std::nullopt;
    return std::vector<Value>{r.value};
}

}  // namespace

BuiltinFunction makeBuiltinFunction(std::string_view name, std::string_view symbol,
                                    std::size_t arity) {
    BuiltinFunction f;
    f.builtin = std::string(name);
    f.arity = arity;
    auto requireArity = [&](std::size_t wanted) {
        if (arity != wanted) {
            throw Error("ArityMismatch", "builtin '" + std::string(name) + "' has arity " +
                                             std::to_string(wanted) + ", symbol '" +
                                             std::string(symbol) + "' has arity " +
                                             std::to_string(arity));
        }
    };
    if (name == "succ") {
        requireArity(1);
        f.apply = [](std::span<const Value> a) { return unaryNumeric(a, arith::add, 1); };
        f.invert = [](const Value& r) { return invertByArithmetic(r, arith::sub, 1); };
    } else if (name == "pred") {
        requireArity(1);
        f.apply = [](std::span<const Value> a) { return unaryNumeric(a, arith::sub, 1); };
        f.invert = [](const Value& r) { return invertByArithmetic(r, arith::add, 1); };
    } else if (name == "neg") {
        requireArity(1);
        f.apply = [](std::span<const Value> a) { return arith::neg(a[0]); };
        f.invert = [](const Value& r) -> std::optional<std::vector<Value>> {
            auto v = arith::neg(r);
            if (!v.defined()) return std::nullopt;
            return std::vector<Value>{v.value};
        };
    } else if (name == "add") {
        requireArity(2);
        f.apply = [](std::span<const Value> a) { return arith::add(a[0], a[1]); };
    } else if (name == "sub") {
        requireArity(2);
        f.apply = [](std::span<const Value> a) { return arith::sub(a[0], a[1]); };
    } else if (name == "mul") {
        requireArity(2);
        f.apply = [](std::span<const Value> a) { return arith::mul(a[0], a[1]); };
    } else if (name == "div") {
        requireArity(2);
        f.apply = [](std::span<const Value> a) { return arith::div(a[0], a[1]); };
    } else if (name == "ctor") {
        std::string functor(symbol);
        f.apply = [functor](std::span<const Value> a) {
            return Applied::ok(Value::symbol(functor, std::vector<Value>(a.begin(), a.end())));
        };
        f.invert = [functor, arity](const Value& r) -> std::optional<std::vector<Value>> {
            if (r.kind() != Value::Kind::Symbolic || r.functor() != functor ||
                r.args().size() != arity)
                return std::nullopt;
            return std::vector<Value>(r.args().begin(), r.args().end());
        };
    } else if (name == "listcons") {
        requireArity(2);
        f.apply = [](std::span<const Value> a) {
            if (a[1].kind() != Value::Kind::List) return Applied::mismatch();
            std::vector<Value> items{a[0]};
            items.insert(items.end(), a[1].items().begin(), a[1].items().end());
            return Applied::ok(Value::list(std::move(items)));
        };
        f.invert = [](const Value& r) -> std::optional<std::vector<Value>> {
            if (r.kind() != Value::Kind::List || r.items().empty()) return std::nullopt;
            auto items = r.items();
            return std::vector<Value>{items[0],
                                      Value::list(std::vector<Value>(items.begin() + 1, items.end()))};
        };
    } else {
        throw Error("UnknownBuiltin", "unknown builtin function '" + std::string(name) + "'");
    }
    return f;
}

std::optional<Comparison> comparisonFromName(std::string_view name) {
    if (name == "lt") return Comparison::Less;
    if (name == "le") return Comparison::LessEqual;
    if (name == "gt") return Comparison::Greater;
    if (name == "ge") return Comparison::GreaterEqual;
    return std::nullopt;
}

const char* comparisonName(Comparison c) {
    switch (c) {
        case Comparison::Less: return "lt";
        case Comparison::LessEqual: return "le";
        case Comparison::Greater: return "gt";
        case Comparison::GreaterEqual: return "ge";
    }
    return "?";
}

Applied::Status compareWith(Comparison c, const Value& a, const Value& b, bool& result) {
    auto ord = arith::compare(a, b);
    result = false;
    if (!ord) {
        bool numeric = a.isNumber() && b.isNumber();  // NaN: comparable kinds, no order
        return numeric ? Applied::Status::Ok : Applied::Status::KindMismatch;
    }
    switch (c) {
        case Comparison::Less: result = *ord < 0; break;
        case Comparison::LessEqual: result = *ord <= 0; break;
        case Comparison::Greater: result = *ord > 0; break;
        case Comparison::GreaterEqual: result = *ord >= 0; break;
    }
    return Applied::Status::Ok;
}

namespace {

Applied numeralValue(std::string_view text, NumeralKind integers, NumeralKind decimals) {
    bool decimal = text.find('.') != std::string_view::npos;
    NumeralKind kind = decimal ? decimals : integers;
    mpq_class exact = detail::exactDecimal(text);
    switch (kind) {
        case NumeralKind::Integer:
            if (exact.get_den() != 1) return Applied::undefined();
            return Applied::ok(Value::rational(exact));
        case NumeralKind::Rational: return Applied::ok(Value::rational(exact));
        case NumeralKind::Float: return Applied::ok(Value::floating(detail::parseDouble(text)));
    }
    return Applied::undefined();
}

}  // namespace

Applied FunctionTable::constant(std::string_view name) const {
    if (auto it = constants_.find(name); it != constants_.end()) return Applied::ok(it->second);
    if (Signature::isNumeral(name)) return numeralValue(name, integerNumerals_, decimalNumerals_);
    return Applied::ok(Value::symbol(std::string(name)));
}

Applied FunctionTable::apply(std::string_view name, std::span<const Value> args) const {
    if (auto it = functions_.find(name); it != functions_.end()) {
        if (it->second.arity != args.size() && it->second.builtin != "ctor") return Applied::mismatch();
        return it->second.apply(args);
    }
    return Applied::ok(Value::symbol(std::string(name), std::vector<Value>(args.begin(), args.end())));
}

bool FunctionTable::invertible(std::string_view name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) return true;  // unbound symbols are constructors
    return static_cast<bool>(it->second.invert);
}

std::optional<std::vector<Value>> FunctionTable::invert(std::string_view name, std::size_t arity,
                                                        const Value& result) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) {
        if (result.kind() != Value::Kind::Symbolic || result.functor() != name ||
            result.args().size() != arity)
            return std::nullopt;
        return std::vector<Value>(result.args().begin(), result.args().end());
    }
    if (!it->second.invert) return std::nullopt;
    return it->second.invert(result);
}

std::optional<Comparison> FunctionTable::relation(std::string_view name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) return std::nullopt;
    return it->second;
}

Domain Domain::finite(std::vector<Value> values) {
    Domain d(Kind::Finite);
    for (auto& v : values)
        if (d.members_.insert(v).second) d.elements_.push_back(std::move(v));
    std::sort(d.elements_.begin(), d.elements_.end(), ValueLess{});
    return d;
}

Domain Domain::generated(const std::vector<Value>& seeds,
                         const std::vector<std::pair<std::string, std::size_t>>& generators,
                         int depth, const FunctionTable& functions) {
    Domain d(Kind::Generated);
    std::vector<Value> all;
    for (const auto& s : seeds)
        if (d.members_.insert(s).second) all.push_back(s);
    for (int k = 0; k < depth && !all.empty(); ++k) {
        const std::vector<Value> pool = all;
        std::vector<Value> fresh;
        for (const auto& [g, arity] : generators) {
            std::vector<std::size_t> idx(arity, 0);
            std::vector<Value> args(arity);
            while (true) {
                for (std::size_t i = 0; i < arity; ++i) args[i] = pool[idx[i]];
                auto r = functions.apply(g, args);
                if (r.defined() && d.members_.insert(r.value).second) fresh.push_back(r.value);
                std::size_t p = 0;
                while (p < arity && ++idx[p] == pool.size()) idx[p++] = 0;
                if (p == arity) break;
            }
        }
        if (fresh.empty()) break;
        all.insert(all.end(), fresh.begin(), fresh.end());
    }
    d.elements_ = std::move(all);
    std::sort(d.elements_.begin(), d.elements_.end(), ValueLess{});
    return d;
}

Domain Domain::unbounded(Kind kind) { return Domain(kind); }

const std::vector<Value>& Domain::elements() const {
    if (!enumerable())
        throw Error("NonEnumerableDomain", "domain '" + describe() + "' cannot be enumerated");
    return elements_;
}

bool Domain::contains(const Value& v) const {
    switch (kind_) {
        case Kind::Finite:
        case Kind::Generated: return members_.contains(v);
        case Kind::Integers: return v.kind() == Value::Kind::Integer;
        case Kind::Naturals: {
            if (v.kind() != Value::Kind::Integer) return false;
            if (auto s = v.smallInteger()) return *s >= 0;
            return sgn(v.toMpz()) >= 0;
        }
        case Kind::Rationals: return v.isExact();
        case Kind::Floats: return v.kind() == Value::Kind::Float;
        case Kind::Numbers: return v.isNumber();
        case Kind::Terms: return v.kind() == Value::Kind::Symbolic;
        case Kind::Any: return true;
    }
    return false;
}

std::string Domain::describe() const {
    switch (kind_) {
        case Kind::Finite: return "finite(" + std::to_string(elements_.size()) + ")";
        case Kind::Generated: return "generated(" + std::to_string(elements_.size()) + ")";
        case Kind::Integers: return "integers";
        case Kind::Naturals: return "naturals";
        case Kind::Rationals: return "rationals";
        case Kind::Floats: return "floats";
        case Kind::Numbers: return "numbers";
        case Kind::Terms: return "terms";
        case Kind::Any: return "any";
    }
    return "?";
}

Structure Structure::defaults() {
    Structure s;
    s.domain = Domain::unbounded(Domain::Kind::Any);
    s.functions.setNumerals(NumeralKind::Integer, NumeralKind::Float);
    s.functions.bindFunction("+", makeBuiltinFunction("add", "+", 2));
    s.functions.bindFunction("-", makeBuiltinFunction("sub", "-", 2));
    s.functions.bindFunction("*", makeBuiltinFunction("mul", "*", 2));
    s.functions.bindFunction("/", makeBuiltinFunction("div", "/", 2));
    s.functions.bindFunction("s", makeBuiltinFunction("succ", "s", 1));
    s.functions.bindRelation("<", Comparison::Less);
    s.functions.bindRelation("<=", Comparison::LessEqual);
    s.functions.bindRelation(">", Comparison::Greater);
    s.functions.bindRelation(">=", Comparison::GreaterEqual);
    return s;
}

Value parseValueLiteral(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text), "");
    std::vector<Diagnostic> diags;
    auto v = detail::readValue(ts, diags);
    if (v && !ts.at(detail::Tok::End)) {
        diags.push_back({"SyntaxError", "trailing input after value", "", ts.spanOf(ts.peek())});
    }
    if (!diags.empty() || !v) {
        if (diags.empty()) diags.push_back({"SyntaxError", "expected a value", "", std::nullopt});
        throw FormatError(std::move(diags));
    }
    return *v;
}

namespace {

// Directives end at the end of their line.
class DomParser {
public:
    DomParser(std::string_view text, const Signature& sig, const std::string& file)
        : ts_(detail::tokenize(text), file), sig_(sig) {}

    Structure run() {
        Structure s;
        s.domain = Domain::unbounded(Domain::Kind::Any);
        std::vector<Value> finiteValues;
        bool haveFinite = false;
        struct GenRule {
            std::vector<Value> seeds;
            std::vector<std::pair<std::string, std::size_t>> generators;
            int depth = 0;
        };
        std::optional<GenRule> gen;
        std::optional<Domain::Kind> unboundedKind;

        while (!ts_.at(detail::Tok::End)) {
            const detail::Token& head = ts_.peek();
            line_ = head.line;
            if (head.kind != detail::Tok::Ident) {
                error(head, "expected a directive");
                skipLine();
                continue;
            }
            std::string directive = ts_.next().text;
            try {
                if (directive == "domain") {
                    std::string kind = expectWord("domain kind");
                    if (kind == "range") {
                        auto lo = readInteger();
                        auto hi = readInteger();
                        for (std::int64_t v = lo; v <= hi; ++v) finiteValues.push_back(Value::integer(v));
                        haveFinite = true;
                    } else if (kind == "values") {
                        while (onLine()) {
                            auto v = detail::readValue(ts_, diags_);
                            if (!v) break;
                            finiteValues.push_back(*v);
                            ts_.accept(detail::Tok::Comma);
                        }
                        haveFinite = true;
                    } else if (kind == "lists") {
                        std::vector<Value> alphabet;
                        int maxLen = -1;
                        while (onLine()) {
                            if (ts_.atIdent("max")) {
                                ts_.next();
                                maxLen = static_cast<int>(readInteger());
                                continue;
                            }
                            auto v = detail::readValue(ts_, diags_);
                            if (!v) break;
                            alphabet.push_back(*v);
                            ts_.accept(detail::Tok::Comma);
                        }
                        if (maxLen < 0) throw lineError("'domain lists' needs 'max N'");
                        for (auto& v : listsUpTo(alphabet, maxLen)) finiteValues.push_back(v);
                        for (auto& a : alphabet) finiteValues.push_back(a);
                        haveFinite = true;
                    } else if (kind == "generated") {
                        GenRule g;
                        while (onLine()) {
                            std::string key = expectWord("'depth', 'seeds' or 'generators'");
                            if (key == "depth") {
                                g.depth = static_cast<int>(readInteger());
                            } else if (key == "seeds") {
                                while (onLine() && !ts_.atIdent("generators") && !ts_.atIdent("depth")) {
                                    auto v = readTermValue(s.functions);
                                    g.seeds.push_back(v);
                                    ts_.accept(detail::Tok::Comma);
                                }
                            } else if (key == "generators") {
                                while (onLine() && !ts_.atIdent("seeds") && !ts_.atIdent("depth")) {
                                    std::string f = readSymbol();
                                    auto arity = sig_.functionArity(f);
                                    if (!arity) throw lineError("'" + f + "' is not a declared function");
                                    g.generators.emplace_back(f, *arity);
                                    ts_.accept(detail::Tok::Comma);
                                }
                            } else {
                                throw lineError("unknown key '" + key + "'");
                            }
                        }
                        gen = std::move(g);
                    } else {
                        static const std::map<std::string, Domain::Kind> kinds = {
                            {"integers", Domain::Kind::Integers}, {"naturals", Domain::Kind::Naturals},
                            {"rationals", Domain::Kind::Rationals}, {"floats", Domain::Kind::Floats},
                            {"numbers", Domain::Kind::Numbers},     {"terms", Domain::Kind::Terms},
                            {"any", Domain::Kind::Any}};
                        auto it = kinds.find(kind);
                        if (it == kinds.end()) throw lineError("unknown domain kind '" + kind + "'");
                        unboundedKind = it->second;
                    }
                } else if (directive == "numerals" || directive == "decimals") {
                    std::string kind = expectWord("numeral kind");
                    NumeralKind k;
                    if (kind == "int" || kind == "integer") k = NumeralKind::Integer;
                    else if (kind == "rational") k = NumeralKind::Rational;
                    else if (kind == "float") k = NumeralKind::Float;
                    else throw lineError("unknown numeral kind '" + kind + "'");
                    if (directive == "numerals")
                        s.functions.setNumerals(k, s.functions.decimalNumerals());
                    else
                        s.functions.setNumerals(s.functions.integerNumerals(), k);
                } else if (directive == "const") {
                    std::string name = readSymbol();
                    if (!sig_.isConstant(name)) throw lineError("'" + name + "' is not a declared constant");
                    expect(detail::Tok::Eq);
                    auto v = detail::readValue(ts_, diags_);
                    if (!v) throw lineError("expected a value");
                    s.functions.bindConstant(name, *v);
                } else if (directive == "func") {
                    std::string name = readSymbol();
                    auto arity = sig_.functionArity(name);
                    if (!arity) throw lineError("'" + name + "' is not a declared function");
                    expect(detail::Tok::Eq);
                    std::string builtin = expectWord("builtin name");
                    s.functions.bindFunction(name, makeBuiltinFunction(builtin, name, *arity));
                } else if (directive == "pred") {
                    std::string name = readSymbol();
                    auto arity = sig_.predicateArity(name);
                    if (!arity) throw lineError("'" + name + "' is not a declared predicate");
                    if (*arity != 2) throw lineError("builtin relations are binary");
                    expect(detail::Tok::Eq);
                    std::string builtin = expectWord("comparison name");
                    auto c = comparisonFromName(builtin);
                    if (!c) throw lineError("unknown comparison '" + builtin + "'");
                    s.functions.bindRelation(name, *c);
                } else {
                    throw lineError("unknown directive '" + directive + "'");
                }
                if (onLine()) throw lineError("unexpected " + std::string(detail::describe(ts_.peek().kind)));
            } catch (const Error& e) {
                diags_.push_back({e.code() == "FormatError" ? "DomainFormat" : e.code(), e.what(), "",
                                  SourceSpan{ts_.file(), line_, 1, line_, 1}});
                skipLine();
            }
        }

        if (!diags_.empty()) throw FormatError(std::move(diags_));
        int kinds = int(haveFinite) + int(gen.has_value()) + int(unboundedKind.has_value());
        if (kinds > 1) {
            throw FormatError({{"DomainFormat", "conflicting domain declarations", "", std::nullopt}});
        }
        if (haveFinite) s.domain = Domain::finite(std::move(finiteValues));
        else if (gen) s.domain = Domain::generated(gen->seeds, gen->generators, gen->depth, s.functions);
        else if (unboundedKind) s.domain = Domain::unbounded(*unboundedKind);
        return s;
    }

private:
    bool onLine() const { return !ts_.at(detail::Tok::End) && ts_.peek().line == line_; }

    void skipLine() {
        while (onLine()) ts_.next();
    }

    Error lineError(const std::string& msg) const { return Error("DomainFormat", msg); }

    void error(const detail::Token& t, const std::string& msg) {
        diags_.push_back({"DomainFormat", msg, "", ts_.spanOf(t)});
    }

    std::string expectWord(const std::string& what) {
        if (!onLine() || !ts_.at(detail::Tok::Ident)) throw lineError("expected " + what);
        return ts_.next().text;
    }

    void expect(detail::Tok k) {
        if (!onLine() || !ts_.accept(k)) throw lineError(std::string("expected ") + detail::describe(k));
    }

    std::int64_t readInteger() {
        bool negative = onLine() && ts_.accept(detail::Tok::Minus);
        if (!onLine() || !ts_.at(detail::Tok::Number) || ts_.peek().text.find('.') != std::string::npos)
            throw lineError("expected an integer");
        std::int64_t v = 0;
        const auto& text = ts_.next().text;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc()) throw lineError("integer out of range");
        return negative ? -v : v;
    }

    std::string readSymbol() {
        if (!onLine()) throw lineError("expected a symbol");
        const auto& t = ts_.peek();
        if (t.kind == detail::Tok::Ident || detail::isOperatorToken(t.kind) || t.kind == detail::Tok::Number)
            return ts_.next().text;
        throw lineError("expected a symbol");
    }

    // Seeds are ground terms interpreted through the function table.
    Value readTermValue(const FunctionTable& functions) {
        auto v = detail::readValue(ts_, diags_);
        if (!v) throw lineError("expected a value");
        if (v->kind() == Value::Kind::Symbolic && v->args().empty()) {
            auto c = functions.constant(v->functor());
            if (c.defined()) return c.value;
        }
        return *v;
    }

    static std::vector<Value> listsUpTo(const std::vector<Value>& alphabet, int maxLen) {
        std::vector<Value> out;
        std::vector<Value> frontier{Value::symbol("nil")};
        out.push_back(frontier.front());
        for (int len = 1; len <= maxLen; ++len) {
            std::vector<Value> next;
            for (const auto& tail : frontier)
                for (const auto& a : alphabet) next.push_back(Value::symbol("cons", {a, tail}));
            out.insert(out.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        return out;
    }

    detail::TokenStream ts_;
    const Signature& sig_;
    std::vector<Diagnostic> diags_;
    int line_ = 0;
};

}  // namespace

Structure parseStructure(std::string_view text, const Signature& signature, const std::string& file) {
    return DomParser(text, signature, file).run();
}

}  // namespace relkit
