#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "relkit/ast.h"
#include "relkit/structure.h"
#include "relkit/value.h"

namespace relkit {

using Relation = std::unordered_set<Tuple, TupleHash>;

/**
 * The variable part of an (F,=)-interpretation: one finite relation per
 * predicate symbol. "=", "true" and "false" have fixed meanings and are never
 * stored; neither are predicates bound to builtin comparisons.
 */
class Interpretation {
public:
    Interpretation() = default;

    /// Every stored predicate of the signature, with empty relations.
    static Interpretation bottom(const Signature& signature, const FunctionTable& functions);

    void declare(const std::string& predicate, std::size_t arity);
    bool has(std::string_view predicate) const;
    std::size_t arity(std::string_view predicate) const;

    /// Throws Error("UnknownPredicate").
    const Relation& relation(std::string_view predicate) const;
    Relation& relation(std::string_view predicate);

    /// Adds a tuple; returns false if it was already present.
    /// Throws Error("ArityMismatch") / Error("UnknownPredicate").
    bool insert(std::string_view predicate, Tuple tuple);
    bool contains(std::string_view predicate, const Tuple& tuple) const;

    /// Predicate names in declaration order.
    const std::vector<std::string>& predicates() const { return order_; }
    std::size_t totalSize() const;

    friend bool operator==(const Interpretation& a, const Interpretation& b);

private:
    struct Entry {
        std::size_t arity = 0;
        Relation tuples;
    };
    const Entry& entry(std::string_view predicate) const;

    std::vector<std::string> order_;
    std::map<std::string, Entry, std::less<>> entries_;
};

/// Componentwise inclusion I0 ⪯ I1. Throws Error("SignatureMismatch").
bool leq(const Interpretation& a, const Interpretation& b);

/// Componentwise intersection. Throws Error("EmptySet") / Error("SignatureMismatch").
Interpretation intersect(std::span<const Interpretation> interpretations);

/// Componentwise union. Throws Error("SignatureMismatch").
Interpretation unite(const Interpretation& a, const Interpretation& b);

std::vector<Tuple> sortedTuples(const Relation& relation);

/// `.rdata` text: one `pred: (v, ...).` line per tuple, predicates in
/// declaration order, tuples in canonical order.
std::string formatRelationData(const Interpretation& interpretation);

}  // namespace relkit
