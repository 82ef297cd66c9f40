#include "literal.h"

#include <cerrno>
#include <cstdlib>
#include <string>

namespace relkit::detail {

mpq_class exactDecimal(std::string_view text) {
    std::string digits;
    bool negative = false;
    std::size_t fraction = 0;
    bool afterDot = false;
    for (char c : text) {
        if (c == '-') {
            negative = true;
        } else if (c == '.') {
            afterDot = true;
        } else {
            digits += c;
            if (afterDot) ++fraction;
        }
    }
    mpz_class num(digits.empty() ? "0" : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction);
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

double parseDouble(std::string_view text) {
    std::string s(text);
    return std::strtod(s.c_str(), nullptr);
}

namespace {

std::optional<Value> readNumber(TokenStream& ts, std::vector<Diagnostic>& diags, bool negative) {
    const Token& t = ts.peek();
    if (t.kind == Tok::FloatLit) {
        ts.next();
        double v = parseDouble(t.text);
        return Value::floating(negative ? -v : v);
    }
    if (t.kind != Tok::Number) {
        diags.push_back({"SyntaxError", "expected a number", "", ts.spanOf(t)});
        return std::nullopt;
    }
    Token num = ts.next();
    if (num.text.find('.') != std::string::npos) {
        double v = parseDouble(num.text);
        return Value::floating(negative ? -v : v);
    }
    mpz_class n(num.text, 10);
    if (negative) n = -n;
    if (ts.at(Tok::Slash) && ts.peek(1).kind == Tok::Number &&
        ts.peek(1).text.find('.') == std::string::npos) {
        ts.next();
        Token den = ts.next();
        mpz_class d(den.text, 10);
        if (d == 0) {
            diags.push_back({"SyntaxError", "zero denominator", "", ts.spanOf(den)});
            return std::nullopt;
        }
        return Value::rational(mpq_class(n, d));
    }
    return Value::integer(n);
}

std::optional<std::vector<Value>> readValueList(TokenStream& ts, std::vector<Diagnostic>& diags,
                                                Tok close) {
    std::vector<Value> items;
    if (ts.accept(close)) return items;
    while (true) {
        auto v = readValue(ts, diags);
        if (!v) return std::nullopt;
        items.push_back(std::move(*v));
        if (ts.accept(close)) return items;
        if (!ts.accept(Tok::Comma)) {
            diags.push_back({"SyntaxError",
                             std::string("expected ',' or ") + describe(close) + ", found " +
                                 describe(ts.peek().kind),
                             "", ts.spanOf(ts.peek())});
            return std::nullopt;
        }
    }
}

}  // namespace

std::optional<Value> readValue(TokenStream& ts, std::vector<Diagnostic>& diags) {
    const Token& t = ts.peek();
    switch (t.kind) {
        case Tok::Minus:
            ts.next();
            return readNumber(ts, diags, true);
        case Tok::Number:
        case Tok::FloatLit: return readNumber(ts, diags, false);
        case Tok::Ident: {
            std::string name = ts.next().text;
            if (!ts.accept(Tok::LParen)) return Value::symbol(std::move(name));
            auto args = readValueList(ts, diags, Tok::RParen);
            if (!args) return std::nullopt;
            return Value::symbol(std::move(name), std::move(*args));
        }
        case Tok::LBracket: {
            ts.next();
            auto items = readValueList(ts, diags, Tok::RBracket);
            if (!items) return std::nullopt;
            return Value::list(std::move(*items));
        }
        default:
            diags.push_back({"SyntaxError",
                             std::string("expected a value, found ") + describe(t.kind), "",
                             ts.spanOf(t)});
            return std::nullopt;
    }
}

}  // namespace relkit::detail
