#include "relkit/tuple.h"

#include <set>

namespace relkit {

Assignment reindex(const Tuple& t, const std::vector<std::string>& vars) {
    if (t.size() != vars.size()) {
        throw TupleError(TupleError::Code::LengthMismatch,
                         "tuple has " + std::to_string(t.size()) + " positions but " +
                             std::to_string(vars.size()) + " variables were given");
    }
    Assignment alpha;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!alpha.emplace(vars[i], t[i]).second) {
            throw TupleError(TupleError::Code::RepeatedVariable,
                             "variable '" + vars[i] + "' repeated");
        }
    }
    return alpha;
}

Tuple compose(const Assignment& alpha, const std::vector<std::string>& vars) {
    Tuple t;
    t.reserve(vars.size());
    for (const auto& v : vars) {
        auto it = alpha.find(v);
        if (it == alpha.end())
            throw TupleError(TupleError::Code::MissingVariable, "no value for '" + v + "'");
        t.push_back(it->second);
    }
    return t;
}

std::string formatAssignment(const Assignment& alpha) {
    std::string s = "{";
    bool first = true;
    for (const auto& [name, value] : alpha) {
        if (!first) s += ", ";
        first = false;
        s += name + " -> " + value.toString();
    }
    return s + "}";
}

}  // namespace relkit
