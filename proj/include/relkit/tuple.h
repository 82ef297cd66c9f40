#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relkit/value.h"

namespace relkit {

/// A tuple of values indexed by variable names.
using Assignment = std::map<std::string, Value>;

class TupleError : public std::runtime_error {
public:
    enum class Code { LengthMismatch, RepeatedVariable, MissingVariable };
    TupleError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// Views a positional tuple through the head variables: maps vars[i] to t[i].
Assignment reindex(const Tuple& t, const std::vector<std::string>& vars);

/// Reads the assignment back in the order of vars; inverse of reindex.
Tuple compose(const Assignment& alpha, const std::vector<std::string>& vars);

std::string formatAssignment(const Assignment& alpha);

}  // namespace relkit
