#include "relkit/interpretation.h"

#include <algorithm>

#include "relkit/errors.h"

namespace relkit {

Interpretation Interpretation::bottom(const Signature& signature, const FunctionTable& functions) {
    Interpretation I;
    for (const auto& [q, arity] : signature.predicates())
        if (!functions.relation(q)) I.declare(q, arity);
    return I;
}

void Interpretation::declare(const std::string& predicate, std::size_t arity) {
    auto [it, inserted] = entries_.try_emplace(predicate);
    if (inserted) {
        order_.push_back(predicate);
        it->second.arity = arity;
    } else if (it->second.arity != arity) {
        throw Error("ArityMismatch", "predicate '" + predicate + "' redeclared with another arity");
    }
}

bool Interpretation::has(std::string_view predicate) const { return entries_.contains(predicate); }

const Interpretation::Entry& Interpretation::entry(std::string_view predicate) const {
    auto it = entries_.find(predicate);
    if (it == entries_.end())
        throw Error("UnknownPredicate", "no relation for predicate '" + std::string(predicate) + "'");
    return it->second;
}

std::size_t Interpretation::arity(std::string_view predicate) const { return entry(predicate).arity; }

const Relation& Interpretation::relation(std::string_view predicate) const {
    return entry(predicate).tuples;
}

Relation& Interpretation::relation(std::string_view predicate) {
    return const_cast<Entry&>(entry(predicate)).tuples;
}

bool Interpretation::insert(std::string_view predicate, Tuple tuple) {
    auto& e = const_cast<Entry&>(entry(predicate));
    if (tuple.size() != e.arity) {
        throw Error("ArityMismatch", "predicate '" + std::string(predicate) + "' has arity " +
                                         std::to_string(e.arity) + ", tuple has " +
                                         std::to_string(tuple.size()) + " values");
    }
    return e.tuples.insert(std::move(tuple)).second;
}

bool Interpretation::contains(std::string_view predicate, const Tuple& tuple) const {
    return entry(predicate).tuples.contains(tuple);
}

std::size_t Interpretation::totalSize() const {
    std::size_t n = 0;
    for (const auto& [q, e] : entries_) n += e.tuples.size();
    return n;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (const auto& [q, e] : a.entries_) {
        auto it = b.entries_.find(q);
        if (it == b.entries_.end() || it->second.arity != e.arity || it->second.tuples != e.tuples)
            return false;
    }
    return true;
}

namespace {

void requireSameShape(const Interpretation& a, const Interpretation& b) {
    bool same = a.predicates().size() == b.predicates().size();
    for (const auto& q : a.predicates()) {
        if (!same) break;
        same = b.has(q) && b.arity(q) == a.arity(q);
    }
    if (!same)
        throw Error("SignatureMismatch", "interpretations are over different predicate sets");
}

}  // namespace

bool leq(const Interpretation& a, const Interpretation& b) {
    requireSameShape(a, b);
    for (const auto& q : a.predicates()) {
        const auto& small = a.relation(q);
        const auto& big = b.relation(q);
        if (small.size() > big.size()) return false;
        for (const auto& t : small)
            if (!big.contains(t)) return false;
    }
    return true;
}

Interpretation intersect(std::span<const Interpretation> interpretations) {
    if (interpretations.empty())
        throw Error("EmptySet", "intersection of an empty set of interpretations");
    Interpretation out = interpretations.front();
    for (const auto& I : interpretations.subspan(1)) {
        requireSameShape(out, I);
        for (const auto& q : out.predicates()) {
            auto& mine = out.relation(q);
            const auto& theirs = I.relation(q);
            std::erase_if(mine, [&](const Tuple& t) { return !theirs.contains(t); });
        }
    }
    return out;
}

Interpretation unite(const Interpretation& a, const Interpretation& b) {
    requireSameShape(a, b);
    Interpretation out = a;
    for (const auto& q : b.predicates())
        for (const auto& t : b.relation(q)) out.relation(q).insert(t);
    return out;
}

std::vector<Tuple> sortedTuples(const Relation& relation) {
    std::vector<Tuple> out(relation.begin(), relation.end());
    std::sort(out.begin(), out.end(), TupleLess{});
    return out;
}

std::string formatRelationData(const Interpretation& interpretation) {
    std::string out;
    for (const auto& q : interpretation.predicates()) {
        for (const auto& t : sortedTuples(interpretation.relation(q))) {
            out += q;
            out += ": ";
            out += formatTuple(t);
            out += ".\n";
        }
    }
    return out;
}

}  // namespace relkit
