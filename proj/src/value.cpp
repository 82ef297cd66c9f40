#include "relkit/value.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relkit {

struct Value::Compound {
    std::string functor;
    std::vector<Value> args;
    std::size_t hash = 0;
};

namespace {

constexpr std::size_t kMix = 0x9e3779b97f4a7c15ULL;

std::size_t combine(std::size_t seed, std::size_t h) {
    return seed ^ (h + kMix + (seed << 6) + (seed >> 2));
}

bool fitsInt64(const mpz_class& v) {
    return mpz_fits_slong_p(v.get_mpz_t()) != 0 && sizeof(long) == sizeof(std::int64_t);
}

mpz_class toMpzFrom(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Value Value::integer(std::int64_t v) { return Value(Rep{v}); }

Value Value::integer(const mpz_class& v) {
    if (fitsInt64(v)) return Value(Rep{static_cast<std::int64_t>(v.get_si())});
    return Value(Rep{std::make_shared<const mpz_class>(v)});
}

Value Value::rational(const mpq_class& v) {
    mpq_class c = v;
    c.canonicalize();
    if (c.get_den() == 1) return integer(c.get_num());
    return Value(Rep{std::make_shared<const mpq_class>(std::move(c))});
}

Value Value::floating(double v) { return Value(Rep{v}); }

Value Value::symbol(std::string functor, std::vector<Value> args) {
    auto node = std::make_shared<Compound>();
    std::size_t h = std::hash<std::string>{}(functor);
    for (const auto& a : args) h = combine(h, a.hash());
    node->functor = std::move(functor);
    node->args = std::move(args);
    node->hash = combine(h, 0x51);
    return Value(Rep{std::shared_ptr<const Compound>(std::move(node))});
}

Value Value::list(std::vector<Value> items) {
    return Value(Rep{std::make_shared<const Items>(std::move(items))});
}

Value::Kind Value::kind() const {
    switch (rep_.index()) {
        case 0:
        case 1: return Kind::Integer;
        case 2: return Kind::Rational;
        case 3: return Kind::Float;
        case 4: return Kind::Symbolic;
        default: return Kind::List;
    }
}

bool Value::isNumber() const { return rep_.index() <= 3; }

std::optional<std::int64_t> Value::smallInteger() const {
    if (auto p = std::get_if<std::int64_t>(&rep_)) return *p;
    return std::nullopt;
}

mpz_class Value::toMpz() const {
    if (auto p = std::get_if<std::int64_t>(&rep_)) return toMpzFrom(*p);
    if (auto p = std::get_if<std::shared_ptr<const mpz_class>>(&rep_)) return **p;
    throw std::logic_error("value is not an integer");
}

mpq_class Value::toMpq() const {
    if (auto p = std::get_if<std::shared_ptr<const mpq_class>>(&rep_)) return **p;
    return mpq_class(toMpz());
}

double Value::toDouble() const {
    switch (rep_.index()) {
        case 0: return static_cast<double>(std::get<0>(rep_));
        case 1: return std::get<1>(rep_)->get_d();
        case 2: return std::get<2>(rep_)->get_d();
        case 3: return std::get<3>(rep_);
        default: throw std::logic_error("value is not a number");
    }
}

const std::string& Value::functor() const { return std::get<4>(rep_)->functor; }

std::span<const Value> Value::args() const { return std::get<4>(rep_)->args; }

std::span<const Value> Value::items() const { return *std::get<5>(rep_); }

std::size_t Value::hash() const {
    switch (rep_.index()) {
        case 0: return combine(1, std::hash<std::int64_t>{}(std::get<0>(rep_)));
        case 1: return combine(1, std::hash<std::string>{}(std::get<1>(rep_)->get_str(16)));
        case 2: return combine(2, std::hash<std::string>{}(std::get<2>(rep_)->get_str(16)));
        case 3: return combine(3, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(std::get<3>(rep_))));
        case 4: return std::get<4>(rep_)->hash;
        default: {
            std::size_t h = 5;
            for (const auto& v : *std::get<5>(rep_)) h = combine(h, v.hash());
            return h;
        }
    }
}

bool operator==(const Value& a, const Value& b) {
    if (a.rep_.index() != b.rep_.index()) return false;
    switch (a.rep_.index()) {
        case 0: return std::get<0>(a.rep_) == std::get<0>(b.rep_);
        case 1: return *std::get<1>(a.rep_) == *std::get<1>(b.rep_);
        case 2: return *std::get<2>(a.rep_) == *std::get<2>(b.rep_);
        case 3:
            return std::bit_cast<std::uint64_t>(std::get<3>(a.rep_)) ==
                   std::bit_cast<std::uint64_t>(std::get<3>(b.rep_));
        case 4: {
            const auto& x = *std::get<4>(a.rep_);
            const auto& y = *std::get<4>(b.rep_);
            if (&x == &y) return true;
            return x.hash == y.hash && x.functor == y.functor && x.args == y.args;
        }
        default: return *std::get<5>(a.rep_) == *std::get<5>(b.rep_);
    }
}

std::string formatFloat(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

std::string Value::toString() const {
    switch (rep_.index()) {
        case 0: return std::to_string(std::get<0>(rep_));
        case 1: return std::get<1>(rep_)->get_str();
        case 2: return std::get<2>(rep_)->get_str();
        case 3: return formatFloat(std::get<3>(rep_));
        case 4: {
            const auto& c = *std::get<4>(rep_);
            if (c.args.empty()) return c.functor;
            std::string s = c.functor + "(";
            for (std::size_t i = 0; i < c.args.size(); ++i) {
                if (i) s += ",";
                s += c.args[i].toString();
            }
            return s + ")";
        }
        default: {
            std::string s = "[";
            const auto& items = *std::get<5>(rep_);
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) s += ",";
                s += items[i].toString();
            }
            return s + "]";
        }
    }
}

namespace {

int sign(int c) { return (c > 0) - (c < 0); }

// Numeric comparison; nullopt when NaN is involved.
std::optional<int> compareNumbers(const Value& a, const Value& b) {
    if (a.kind() == Value::Kind::Float || b.kind() == Value::Kind::Float) {
        double x = a.kind() == Value::Kind::Float ? a.floatValue() : 0.0;
        double y = b.kind() == Value::Kind::Float ? b.floatValue() : 0.0;
        if ((a.kind() == Value::Kind::Float && std::isnan(x)) ||
            (b.kind() == Value::Kind::Float && std::isnan(y)))
            return std::nullopt;
        if (a.kind() == Value::Kind::Float && b.kind() == Value::Kind::Float)
            return (x > y) - (x < y);
        // Mixed exact/float: compare exactly; infinities dominate.
        if (a.kind() == Value::Kind::Float && std::isinf(x)) return x > 0 ? 1 : -1;
        if (b.kind() == Value::Kind::Float && std::isinf(y)) return y > 0 ? -1 : 1;
        mpq_class qa = a.kind() == Value::Kind::Float ? mpq_class(x) : a.toMpq();
        mpq_class qb = b.kind() == Value::Kind::Float ? mpq_class(y) : b.toMpq();
        return sign(cmp(qa, qb));
    }
    auto sa = a.smallInteger();
    auto sb = b.smallInteger();
    if (sa && sb) return (*sa > *sb) - (*sa < *sb);
    if (a.kind() == Value::Kind::Integer && b.kind() == Value::Kind::Integer)
        return sign(cmp(a.toMpz(), b.toMpz()));
    return sign(cmp(a.toMpq(), b.toMpq()));
}

int categoryOf(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Symbolic: return 1;
        case Value::Kind::List: return 2;
        default: return 0;
    }
}

}  // namespace

int compareCanonical(const Value& a, const Value& b) {
    int ca = categoryOf(a), cb = categoryOf(b);
    if (ca != cb) return ca < cb ? -1 : 1;
    if (ca == 0) {
        auto c = compareNumbers(a, b);
        if (c && *c != 0) return *c;
        if (!c) {
            // NaN sorts after every other number.
            bool na = a.kind() == Value::Kind::Float && std::isnan(a.floatValue());
            bool nb = b.kind() == Value::Kind::Float && std::isnan(b.floatValue());
            if (na != nb) return na ? 1 : -1;
        }
        int ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
        if (ka != kb) return ka < kb ? -1 : 1;
        if (a.kind() == Value::Kind::Float) {
            auto x = std::bit_cast<std::uint64_t>(a.floatValue());
            auto y = std::bit_cast<std::uint64_t>(b.floatValue());
            return (x > y) - (x < y);
        }
        return 0;
    }
    if (ca == 1) {
        if (a.functor() != b.functor()) return a.functor() < b.functor() ? -1 : 1;
        auto xa = a.args(), xb = b.args();
        if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
        for (std::size_t i = 0; i < xa.size(); ++i)
            if (int c = compareCanonical(xa[i], xb[i])) return c;
        return 0;
    }
    auto xa = a.items(), xb = b.items();
    for (std::size_t i = 0; i < xa.size() && i < xb.size(); ++i)
        if (int c = compareCanonical(xa[i], xb[i])) return c;
    if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
    return 0;
}

namespace arith {

namespace {

enum class Op { Add, Sub, Mul };

Applied exactOp(Op op, const Value& a, const Value& b) {
    auto sa = a.smallInteger();
    auto sb = b.smallInteger();
    if (sa && sb) {
        std::int64_t r;
        bool overflow = false;
        switch (op) {
            case Op::Add: overflow = __builtin_add_overflow(*sa, *sb, &r); break;
            case Op::Sub: overflow = __builtin_sub_overflow(*sa, *sb, &r); break;
            case Op::Mul: overflow = __builtin_mul_overflow(*sa, *sb, &r); break;
        }
        if (!overflow) return Applied::ok(Value::integer(r));
    }
    if (a.kind() == Value::Kind::Integer && b.kind() == Value::Kind::Integer) {
        mpz_class x = a.toMpz(), y = b.toMpz();
        switch (op) {
            case Op::Add: return Applied::ok(Value::integer(mpz_class(x + y)));
            case Op::Sub: return Applied::ok(Value::integer(mpz_class(x - y)));
            case Op::Mul: return Applied::ok(Value::integer(mpz_class(x * y)));
        }
    }
    mpq_class x = a.toMpq(), y = b.toMpq();
    switch (op) {
        case Op::Add: return Applied::ok(Value::rational(mpq_class(x + y)));
        case Op::Sub: return Applied::ok(Value::rational(mpq_class(x - y)));
        case Op::Mul: return Applied::ok(Value::rational(mpq_class(x * y)));
    }
    return Applied::undefined();
}

Applied binary(Op op, const Value& a, const Value& b) {
    if (!a.isNumber() || !b.isNumber()) return Applied::mismatch();
    if (a.kind() == Value::Kind::Float || b.kind() == Value::Kind::Float) {
        double x = a.toDouble(), y = b.toDouble();
        switch (op) {
            case Op::Add: return Applied::ok(Value::floating(x + y));
            case Op::Sub: return Applied::ok(Value::floating(x - y));
            case Op::Mul: return Applied::ok(Value::floating(x * y));
        }
    }
    return exactOp(op, a, b);
}

}  // namespace

Applied add(const Value& a, const Value& b) { return binary(Op::Add, a, b); }
Applied sub(const Value& a, const Value& b) { return binary(Op::Sub, a, b); }
Applied mul(const Value& a, const Value& b) { return binary(Op::Mul, a, b); }

Applied div(const Value& a, const Value& b) {
    if (!a.isNumber() || !b.isNumber()) return Applied::mismatch();
    if (a.kind() == Value::Kind::Float || b.kind() == Value::Kind::Float) {
        double y = b.toDouble();
        if (y == 0.0) return Applied::undefined();
        return Applied::ok(Value::floating(a.toDouble() / y));
    }
    mpq_class y = b.toMpq();
    if (y == 0) return Applied::undefined();
    return Applied::ok(Value::rational(mpq_class(a.toMpq() / y)));
}

Applied neg(const Value& a) {
    if (!a.isNumber()) return Applied::mismatch();
    if (a.kind() == Value::Kind::Float) return Applied::ok(Value::floating(-a.floatValue()));
    return sub(Value::integer(std::int64_t{0}), a);
}

std::optional<int> compare(const Value& a, const Value& b) {
    int ca = categoryOf(a), cb = categoryOf(b);
    if (ca != cb) return std::nullopt;
    if (ca == 0) return compareNumbers(a, b);
    return compareCanonical(a, b);
}

}  // namespace arith

std::size_t TupleHash::operator()(const Tuple& t) const {
    std::size_t h = t.size();
    for (const auto& v : t) h = combine(h, v.hash());
    return h;
}

bool TupleLess::operator()(const Tuple& a, const Tuple& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (int c = compareCanonical(a[i], b[i])) return c < 0;
    return a.size() < b.size();
}

std::string formatTuple(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += t[i].toString();
    }
    return s + ")";
}

}  // namespace relkit
