#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relkit/ast.h"

namespace relkit {

/// Base error: a machine-readable code plus a message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Malformed input file; carries every diagnostic found.
class FormatError : public Error {
public:
    explicit FormatError(std::vector<Diagnostic> diagnostics)
        : Error(diagnostics.empty() ? "FormatError" : diagnostics.front().code,
                diagnostics.empty() ? "format error" : diagnostics.front().toString()),
          diagnostics_(std::move(diagnostics)) {}
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace relkit
