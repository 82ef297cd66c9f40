#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace relkit {

/**
 * An element of a universe D.
 *
 * Exact numbers have one canonical form: an integer whenever the value is
 * integral (a small int64 unless it does not fit), otherwise a normalized
 * rational p/q with q > 0. Floats are IEEE binary64 compared bit for bit.
 * Symbolic values are ground terms f(v0, ..., vk) built from declared
 * symbols; lists are finite sequences of values.
 */
class Value {
public:
    enum class Kind { Integer, Rational, Float, Symbolic, List };

    Value() : rep_(std::int64_t{0}) {}

    static Value integer(std::int64_t v);
    static Value integer(const mpz_class& v);
    /// Canonicalizes: integral values become Integer.
    static Value rational(const mpq_class& v);
    static Value floating(double v);
    static Value symbol(std::string functor, std::vector<Value> args = {});
    static Value list(std::vector<Value> items);

    Kind kind() const;
    bool isNumber() const;
    bool isExact() const { return kind() == Kind::Integer || kind() == Kind::Rational; }

    /// Small-integer fast path.
    std::optional<std::int64_t> smallInteger() const;
    mpz_class toMpz() const;  ///< Integer only
    mpq_class toMpq() const;  ///< exact numbers only
    double toDouble() const;  ///< any number
    double floatValue() const { return std::get<double>(rep_); }

    const std::string& functor() const;  ///< Symbolic only
    std::span<const Value> args() const;  ///< Symbolic only
    std::span<const Value> items() const;  ///< List only

    std::size_t hash() const;
    std::string toString() const;

    friend bool operator==(const Value& a, const Value& b);

private:
    struct Compound;
    using Items = std::vector<Value>;
    using Rep = std::variant<std::int64_t, std::shared_ptr<const mpz_class>,
                             std::shared_ptr<const mpq_class>, double,
                             std::shared_ptr<const Compound>, std::shared_ptr<const Items>>;
    explicit Value(Rep rep) : rep_(std::move(rep)) {}

    Rep rep_;
};

/// Total order used for deterministic output; numbers order numerically.
int compareCanonical(const Value& a, const Value& b);

struct ValueHash {
    std::size_t operator()(const Value& v) const { return v.hash(); }
};

struct ValueLess {
    bool operator()(const Value& a, const Value& b) const { return compareCanonical(a, b) < 0; }
};

/// Result of applying a builtin: a value, undefined (partial function outside
/// its domain), or a value-kind mismatch.
struct Applied {
    enum class Status { Ok, Undefined, KindMismatch };
    Status status = Status::Undefined;
    Value value;

    static Applied ok(Value v) { return {Status::Ok, std::move(v)}; }
    static Applied undefined() { return {Status::Undefined, {}}; }
    static Applied mismatch() { return {Status::KindMismatch, {}}; }
    bool defined() const { return status == Status::Ok; }
};

namespace arith {

Applied add(const Value& a, const Value& b);
Applied sub(const Value& a, const Value& b);
Applied mul(const Value& a, const Value& b);
Applied div(const Value& a, const Value& b);
Applied neg(const Value& a);

/// Ordering used by the comparison builtins: numeric among numbers,
/// canonical among symbolic values and among lists. Returns nullopt when the
/// operands are not comparable.
std::optional<int> compare(const Value& a, const Value& b);

}  // namespace arith

/// Shortest text that reads back to the same binary64, always with a '.' or
/// exponent so it never looks like an integer.
std::string formatFloat(double v);

using Tuple = std::vector<Value>;

struct TupleHash {
    std::size_t operator()(const Tuple& t) const;
};

struct TupleLess {
    bool operator()(const Tuple& a, const Tuple& b) const;
};

std::string formatTuple(const Tuple& t);

}  // namespace relkit
