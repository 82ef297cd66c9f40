#pragma once

/**
 * The fixed part of an (F,=)-interpretation: the universe D, the meaning of
 * constants and function symbols, and the builtin comparison relations.
 * Interpretations sharing a Structure differ only in their relations.
 */

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "relkit/ast.h"
#include "relkit/value.h"

namespace relkit {

enum class NumeralKind { Integer, Rational, Float };

struct BuiltinFunction {
    std::string builtin;  // catalog name, e.g. "add"
    std::size_t arity = 0;
    std::function<Applied(std::span<const Value>)> apply;
    /// Recovers the arguments from a result (constructor-like functions only).
    std::function<std::optional<std::vector<Value>>(const Value&)> invert;
};

/**
 * Builtin catalog:
 *   succ/1 pred/1 neg/1 add/2 sub/2 mul/2 div/2  numeric tower
 *   ctor/n       symbolic term builder (Herbrand), invertible
 *   listcons/2   list-value cons, invertible
 * Throws Error("UnknownBuiltin") for other names.
 */
BuiltinFunction makeBuiltinFunction(std::string_view catalogName, std::string_view symbol,
                                    std::size_t arity);

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

std::optional<Comparison> comparisonFromName(std::string_view catalogName);
const char* comparisonName(Comparison c);
/// Applies a comparison. Mismatched operand kinds yield KindMismatch.
Applied::Status compareWith(Comparison c, const Value& a, const Value& b, bool& result);

class FunctionTable {
public:
    void bindConstant(const std::string& name, Value value) { constants_[name] = std::move(value); }
    void bindFunction(const std::string& name, BuiltinFunction f) { functions_[name] = std::move(f); }
    void bindRelation(const std::string& name, Comparison c) { relations_[name] = c; }
    void setNumerals(NumeralKind integers, NumeralKind decimals) {
        integerNumerals_ = integers;
        decimalNumerals_ = decimals;
    }

    /// Meaning of a constant symbol. Numerals follow the numeral policy;
    /// unbound symbols denote themselves (Herbrand default).
    Applied constant(std::string_view name) const;
    /// Meaning of a function application; unbound symbols build terms.
    Applied apply(std::string_view name, std::span<const Value> args) const;
    bool invertible(std::string_view name) const;
    std::optional<std::vector<Value>> invert(std::string_view name, std::size_t arity,
                                             const Value& result) const;

    /// Builtin relation bound to a predicate symbol, if any.
    std::optional<Comparison> relation(std::string_view name) const;
    const std::map<std::string, Comparison, std::less<>>& relations() const { return relations_; }

    NumeralKind integerNumerals() const { return integerNumerals_; }
    NumeralKind decimalNumerals() const { return decimalNumerals_; }

private:
    std::map<std::string, Value, std::less<>> constants_;
    std::map<std::string, BuiltinFunction, std::less<>> functions_;
    std::map<std::string, Comparison, std::less<>> relations_;
    NumeralKind integerNumerals_ = NumeralKind::Integer;
    NumeralKind decimalNumerals_ = NumeralKind::Rational;
};

class Domain {
public:
    enum class Kind {
        Finite,     // explicit value set
        Generated,  // seeds closed under generator functions up to a depth
        Integers,
        Naturals,
        Rationals,  // exact numbers
        Floats,
        Numbers,    // any numeric value
        Terms,      // any symbolic value
        Any,
    };

    Domain() : Domain(Kind::Any) {}
    static Domain finite(std::vector<Value> values);
    static Domain generated(const std::vector<Value>& seeds,
                            const std::vector<std::pair<std::string, std::size_t>>& generators,
                            int depth, const FunctionTable& functions);
    static Domain unbounded(Kind kind);

    Kind kind() const { return kind_; }
    bool enumerable() const { return kind_ == Kind::Finite || kind_ == Kind::Generated; }
    /// Elements in canonical order. Throws Error("NonEnumerableDomain").
    const std::vector<Value>& elements() const;
    bool contains(const Value& v) const;
    std::string describe() const;

private:
    explicit Domain(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::vector<Value> elements_;
    std::unordered_set<Value, ValueHash> members_;
};

struct Structure {
    Domain domain;
    FunctionTable functions;

    /// Numbers domain; + - * / as arithmetic, s as successor, < <= > >= as
    /// comparisons; integer numerals are integers and decimals are floats.
    static Structure defaults();
};

/// Reads a `.dom` file. Throws FormatError.
Structure parseStructure(std::string_view text, const Signature& signature,
                         const std::string& file = "");

/// Reads a value literal: 12, -3, 577/408, 8.1, 0x1.8p+0, sym, f(a,b), [a,b].
/// Throws FormatError.
Value parseValueLiteral(std::string_view text);

}  // namespace relkit
